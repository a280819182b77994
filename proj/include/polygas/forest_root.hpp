#pragma once

// Direct numerical check of the forest-root identity: for a smooth,
// compactly supported symmetric function f of t_i = |z_i|^2 and
// t_ij = |z_i - z_j|^2 (z_i complex),
//
//   f(0) = sum over rooted forests (F,R) of
//          Integral_{C^n} f^{(F,R)}(t) (d^2 z / -pi)^n,
//
// where f^{(F,R)} differentiates once in t_ij for ij in F and in t_i for
// i in R, and each tree of F carries exactly one root. Test functions are
// products of quintic C^2 ramps so every partial is closed form:
//
//   f = prod_i g(t_i) * prod_{i<j} u(t_ij),
//   g(t) = g0 * (1 - step(t)),  u(t) = u0 + (1 - u0) * step(t).
//
// The right-hand side is evaluated by radial-reduction quadrature (n <= 3)
// or by Monte Carlo over product disks (n <= 4).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "polygas/errors.hpp"
#include "polygas/graphs.hpp"
#include "polygas/integrate.hpp"
#include "polygas/potentials.hpp"
#include "polygas/rng.hpp"

namespace polygas::forest_root {

struct SymmetricTestFunction {
    int n = 1;
    potentials::PairPotential g_step = potentials::make_smooth_step(0.5);
    double g0 = 1.0;  // g(0)
    bool has_pair = false;
    potentials::PairPotential u_step = potentials::make_smooth_step(0.5);
    double u0 = 1.0;  // u(0)

    double g(double t) const { return g0 * (1.0 - g_step.value(t)); }
    double g_deriv(double t) const { return -g0 * g_step.derivative(t); }
    double u(double t) const { return has_pair ? u0 + (1.0 - u0) * u_step.value(t) : 1.0; }
    double u_deriv(double t) const { return has_pair ? (1.0 - u0) * u_step.derivative(t) : 0.0; }

    // Support bound: g and g' vanish for t >= this.
    double support_t() const { return g_step.ramp_hi(); }
};

inline SymmetricTestFunction make_test_function(int n, double g_eps, double g0 = 1.0) {
    if (n < 1) throw std::invalid_argument("make_test_function: n must be >= 1");
    SymmetricTestFunction f;
    f.n = n;
    f.g_step = potentials::make_smooth_step(g_eps);
    f.g0 = g0;
    return f;
}

inline SymmetricTestFunction make_test_function_with_pair(int n, double g_eps, double u0,
                                                          double u_eps, double g0 = 1.0) {
    SymmetricTestFunction f = make_test_function(n, g_eps, g0);
    f.has_pair = true;
    f.u_step = potentials::make_smooth_step(u_eps);
    f.u0 = u0;
    return f;
}

inline double lhs(const SymmetricTestFunction& f) {
    double v = 1.0;
    for (int i = 0; i < f.n; ++i) v *= f.g(0.0);
    for (int i = 0; i < f.n; ++i)
        for (int j = i + 1; j < f.n; ++j) v *= f.u(0.0);
    return v;
}

namespace detail {

// Per-forest masks: bit i of roots, bit p of pair index (i<j).
struct ForestTerm {
    unsigned root_mask = 0;
    unsigned edge_mask = 0;
};

inline int pair_index(int i, int j, int n) {  // 0-based vertices, i < j
    int idx = 0;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            if (a == i && b == j) return idx;
            ++idx;
        }
    throw std::logic_error("pair_index: bad pair");
}

inline std::vector<ForestTerm> forest_terms(int n) {
    std::vector<ForestTerm> terms;
    graphs::for_each_rooted_forest(n, [&](const graphs::RootedForest& f) {
        ForestTerm t;
        for (int r : f.roots) t.root_mask |= 1u << (r - 1);
        for (const auto& [a, b] : f.edges)
            t.edge_mask |= 1u << pair_index(a - 1, b - 1, n);
        terms.push_back(t);
    });
    return terms;
}

// Sum over (F,R) of the differentiated product, given precomputed factor
// values at the current point.
inline double forest_sum(const std::vector<ForestTerm>& terms, int n, const double* gv,
                         const double* gd, const double* uv, const double* ud, int n_pairs) {
    double total = 0.0;
    for (const ForestTerm& t : terms) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= (t.root_mask >> i) & 1u ? gd[i] : gv[i];
        for (int p = 0; p < n_pairs; ++p) prod *= (t.edge_mask >> p) & 1u ? ud[p] : uv[p];
        total += prod;
    }
    return total;
}

}  // namespace detail

struct RhsValue {
    double value = 0.0;
    double stderr_ = 0.0;
    bool stochastic = false;
};

// Quadrature path after radial reduction. n=1: one radial integral.
// n=2: (t1, t2, theta) with t12 = t1 + t2 - 2 sqrt(t1 t2) cos theta.
// n=3: (t1, t2, t3, theta2, theta3) after fixing the global rotation and
// folding the reflection; 5 nested levels, so practical only at loose
// tolerances.
inline RhsValue rhs_quad(const SymmetricTestFunction& f, double tol) {
    const double T = f.support_t();
    const auto terms = detail::forest_terms(f.n);

    if (f.n == 1) {
        // Single rooted singleton: -Integral g'(t) dt.
        const double bp[] = {f.g_step.ramp_lo()};
        const double v = -integrate::quad_1d([&](double t) { return f.g_deriv(t); }, 0.0, T, tol,
                                             std::span<const double>(bp, 1));
        return RhsValue{v, 0.0, false};
    }

    if (f.n == 2) {
        auto integrand = [&](double t1, double t2, double theta) {
            const double t12 = t1 + t2 - 2.0 * std::sqrt(t1 * t2) * std::cos(theta);
            const double gv[2] = {f.g(t1), f.g(t2)};
            const double gd[2] = {f.g_deriv(t1), f.g_deriv(t2)};
            const double uv[1] = {f.u(t12)};
            const double ud[1] = {f.u_deriv(t12)};
            return detail::forest_sum(terms, 2, gv, gd, uv, ud, 1);
        };
        const double glo = f.g_step.ramp_lo();
        const double bp_t[] = {glo};
        const double pi = std::numbers::pi;
        // I = (1/pi) Int_0^T dt1 Int_0^T dt2 Int_0^pi dtheta  (theta folded).
        const double v =
            integrate::quad_1d(
                [&](double t1) {
                    return integrate::quad_1d(
                        [&](double t2) {
                            return integrate::quad_1d(
                                [&](double th) { return integrand(t1, t2, th); }, 0.0, pi,
                                tol * 0.05);
                        },
                        0.0, T, tol * 0.1, std::span<const double>(bp_t, 1));
                },
                0.0, T, tol * 0.5, std::span<const double>(bp_t, 1)) /
            pi;
        return RhsValue{v, 0.0, false};
    }

    if (f.n == 3) {
        // Angular part by fixed periodic midpoint rules (the integrand is a
        // smooth 2 pi-periodic function of each angle, even in the pair
        // (th2, th3) -> (-th2, -th3) reflection); radial part adaptive.
        // With the (d^2 z / -pi)^3 measure the angular averages absorb all
        // constants:  rhs = -Int dt1 dt2 dt3  <integrand>_angles.
        const double pi = std::numbers::pi;
        constexpr int n_th2 = 16;  // half period, reflection-folded
        constexpr int n_th3 = 32;  // full period
        auto angular_mean = [&](double t1, double t2, double t3) {
            const double r1 = std::sqrt(t1), r2 = std::sqrt(t2), r3 = std::sqrt(t3);
            const double gv[3] = {f.g(t1), f.g(t2), f.g(t3)};
            const double gd[3] = {f.g_deriv(t1), f.g_deriv(t2), f.g_deriv(t3)};
            double acc = 0.0;
            for (int i2 = 0; i2 < n_th2; ++i2) {
                const double th2 = (i2 + 0.5) * pi / n_th2;
                const double t12 = t1 + t2 - 2.0 * r1 * r2 * std::cos(th2);
                for (int i3 = 0; i3 < n_th3; ++i3) {
                    const double th3 = (i3 + 0.5) * 2.0 * pi / n_th3;
                    const double t13 = t1 + t3 - 2.0 * r1 * r3 * std::cos(th3);
                    const double t23 = t2 + t3 - 2.0 * r2 * r3 * std::cos(th2 - th3);
                    const double uv[3] = {f.u(t12), f.u(t13), f.u(t23)};
                    const double ud[3] = {f.u_deriv(t12), f.u_deriv(t13), f.u_deriv(t23)};
                    acc += detail::forest_sum(terms, 3, gv, gd, uv, ud, 3);
                }
            }
            return acc / (n_th2 * n_th3);
        };
        const double glo = f.g_step.ramp_lo();
        const double bp_t[] = {glo};
        const double v = -integrate::quad_1d(
            [&](double t1) {
                return integrate::quad_1d(
                    [&](double t2) {
                        return integrate::quad_1d([&](double t3) { return angular_mean(t1, t2, t3); },
                                                  0.0, T, tol * 0.05,
                                                  std::span<const double>(bp_t, 1));
                    },
                    0.0, T, tol * 0.2, std::span<const double>(bp_t, 1));
            },
            0.0, T, tol, std::span<const double>(bp_t, 1));
        return RhsValue{v, 0.0, false};
    }

    throw std::invalid_argument("rhs_quad: quadrature path supports n <= 3");
}

// Monte Carlo path: each z_i uniform on the disk of squared radius
// support_t(); estimate is (-rho^2)^n times the sample mean of the forest
// sum, rho^2 the squared disk radius.
inline RhsValue rhs_mc(const SymmetricTestFunction& f, std::uint64_t n_samples,
                       std::uint64_t seed) {
    if (f.n > 4) throw std::invalid_argument("rhs_mc: n <= 4");
    const int n = f.n;
    const int n_pairs = n * (n - 1) / 2;
    const auto terms = detail::forest_terms(n);
    const double rho_sq = f.support_t();

    struct DiskPoint {
        double x[4], y[4];
    };
    auto sampler = [&, n, rho_sq](SplitRng& rng) {
        DiskPoint p{};
        for (int i = 0; i < n; ++i) {
            const double r = std::sqrt(rho_sq * rng.next_double());
            const double phi = 2.0 * std::numbers::pi * rng.next_double();
            p.x[i] = r * std::cos(phi);
            p.y[i] = r * std::sin(phi);
        }
        return std::pair<DiskPoint, double>(p, 1.0);  // density folded into prefactor
    };
    auto fn = [&, n, n_pairs](const DiskPoint& p) {
        double gv[4], gd[4], uv[6], ud[6];
        for (int i = 0; i < n; ++i) {
            const double t = p.x[i] * p.x[i] + p.y[i] * p.y[i];
            gv[i] = f.g(t);
            gd[i] = f.g_deriv(t);
        }
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j, ++idx) {
                const double dx = p.x[i] - p.x[j], dy = p.y[i] - p.y[j];
                const double t = dx * dx + dy * dy;
                uv[idx] = f.u(t);
                ud[idx] = f.u_deriv(t);
            }
        return detail::forest_sum(terms, n, gv, gd, uv, ud, n_pairs);
    };

    integrate::MCEstimate est = integrate::mc_integrate(fn, sampler, n_samples, seed);
    double prefactor = 1.0;
    for (int i = 0; i < n; ++i) prefactor *= -rho_sq;
    return RhsValue{prefactor * est.value, std::abs(prefactor) * est.stderr_, true};
}

enum class Method { quad, mc };

struct Budget {
    double quad_tol = 1e-8;
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 1;
};

inline RhsValue rhs(const SymmetricTestFunction& f, Method method, const Budget& budget) {
    return method == Method::quad ? rhs_quad(f, budget.quad_tol)
                                  : rhs_mc(f, budget.mc_samples, budget.seed);
}

struct IdentityReport {
    double lhs_value = 0.0;
    double rhs_value = 0.0;
    double rhs_stderr = 0.0;
    bool stochastic = false;
    double abs_error = 0.0;
    bool pass = false;
};

inline IdentityReport check_identity(const SymmetricTestFunction& f, Method method,
                                     const Budget& budget, double tol) {
    IdentityReport rep;
    rep.lhs_value = lhs(f);
    const RhsValue rhs_v = rhs(f, method, budget);
    rep.rhs_value = rhs_v.value;
    rep.rhs_stderr = rhs_v.stderr_;
    rep.stochastic = rhs_v.stochastic;
    rep.abs_error = std::abs(rep.lhs_value - rep.rhs_value);
    rep.pass = rep.stochastic ? rep.abs_error <= 3.0 * rep.rhs_stderr : rep.abs_error <= tol;
    return rep;
}

}  // namespace polygas::forest_root
