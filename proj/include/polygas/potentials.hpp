#pragma once

// Pair interaction weights U(t) as functions of squared distance t, with
// derivative U'(t). Two families:
//   hard_step:   U(t) = step(t - R^2), with the touching convention
//                U(R^2) = 1. The derivative is a surface delta and is never
//                evaluated pointwise; integration code switches to
//                surface-measure sampling via the is_surface_delta() flag.
//   smooth_step: C^2 monotone quintic ramp from 0 to 1 across
//                t in [1-eps, 1+eps]; closed-form derivative.

#include <cmath>
#include <vector>

#include "polygas/errors.hpp"

namespace polygas::potentials {

enum class Kind { hard_step, smooth_step };

class PairPotential {
public:
    static PairPotential hard_sphere(double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("make_hard_sphere: radius must be > 0");
        PairPotential p;
        p.kind_ = Kind::hard_step;
        p.radius_ = radius;
        return p;
    }

    static PairPotential smooth_step(double eps) {
        if (!(eps > 0.0 && eps < 1.0))
            throw std::invalid_argument("make_smooth_step: eps must lie in (0,1)");
        PairPotential p;
        p.kind_ = Kind::smooth_step;
        p.eps_ = eps;
        return p;
    }

    Kind kind() const { return kind_; }
    double radius() const { return radius_; }
    double eps() const { return eps_; }
    bool is_surface_delta() const { return kind_ == Kind::hard_step; }

    // U(t), t = squared distance.
    double value(double t) const {
        if (kind_ == Kind::hard_step) return t >= radius_ * radius_ ? 1.0 : 0.0;
        const double lo = 1.0 - eps_, hi = 1.0 + eps_;
        if (t <= lo) return 0.0;
        if (t >= hi) return 1.0;
        const double u = (t - lo) / (hi - lo);
        return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
    }

    // U'(t); defined pointwise only for the smooth family.
    double derivative(double t) const {
        if (kind_ == Kind::hard_step)
            throw unsupported_operation(
                "hard-step derivative is a surface delta; use surface-measure integration");
        const double lo = 1.0 - eps_, hi = 1.0 + eps_;
        if (t <= lo || t >= hi) return 0.0;
        const double u = (t - lo) / (hi - lo);
        const double s = u * (1.0 - u);
        return 30.0 * s * s / (hi - lo);
    }

    // Squared-distance ramp window [lo, hi]: U = 0 below, 1 above.
    double ramp_lo() const {
        return kind_ == Kind::hard_step ? radius_ * radius_ : 1.0 - eps_;
    }
    double ramp_hi() const {
        return kind_ == Kind::hard_step ? radius_ * radius_ : 1.0 + eps_;
    }

private:
    PairPotential() = default;
    Kind kind_ = Kind::hard_step;
    double radius_ = 1.0;
    double eps_ = 0.1;
};

inline PairPotential make_hard_sphere(double radius) { return PairPotential::hard_sphere(radius); }
inline PairPotential make_smooth_step(double eps) { return PairPotential::smooth_step(eps); }

// Symmetric table of hard-sphere interactions for several species, plus
// per-species activities.
class SpeciesTable {
public:
    SpeciesTable(const std::vector<std::vector<double>>& radii,
                 const std::vector<double>& activities)
        : n_(static_cast<int>(radii.size())), activities_(activities) {
        if (n_ == 0) throw std::invalid_argument("make_species_table: empty radii matrix");
        if (static_cast<int>(activities.size()) != n_)
            throw std::invalid_argument("make_species_table: activities size mismatch");
        for (int a = 0; a < n_; ++a) {
            if (static_cast<int>(radii[a].size()) != n_)
                throw std::invalid_argument("make_species_table: radii matrix not square");
            for (int b = 0; b < n_; ++b) {
                if (!(radii[a][b] > 0.0))
                    throw std::invalid_argument("make_species_table: radii must be positive");
                if (radii[a][b] != radii[b][a])
                    throw std::invalid_argument("make_species_table: radii matrix not symmetric");
            }
        }
        radii_ = radii;
        for (int a = 0; a < n_; ++a)
            for (int b = 0; b < n_; ++b)
                potentials_.push_back(make_hard_sphere(radii[a][b]));
    }

    int n_species() const { return n_; }
    double radius(int a, int b) const { return radii_[a][b]; }
    double activity(int a) const { return activities_[a]; }
    const PairPotential& potential(int a, int b) const { return potentials_[a * n_ + b]; }

private:
    int n_;
    std::vector<std::vector<double>> radii_;
    std::vector<double> activities_;
    std::vector<PairPotential> potentials_;
};

inline SpeciesTable make_species_table(const std::vector<std::vector<double>>& radii,
                                       const std::vector<double>& activities) {
    return SpeciesTable(radii, activities);
}

}  // namespace polygas::potentials
