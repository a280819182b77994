#pragma once

// Exact one-dimensional gas of unit hard rods via Laplace transform.
//
// Everything is driven by the solutions {s_n} of s e^s = z, ordered by
// decreasing real part (conjugate pairs adjacent, positive imaginary part
// first). For z > 0 there is one real solution; for -1/e < z < 0 there are
// two; the rest come in conjugate pairs, one per imaginary-part window of
// width pi. The partition function has two routes:
//
//   residue series  Z(L) = sum_n e^{s_n (L-1)} / (s_n + 1)
//   finite sum      Z(L) = sum_N z^N (L-N-1)^N theta(L-N-1) / N!
//
// and the truncated two-point function likewise (branch series vs the
// closed form rho e^{-s_0 x} z Z(x) - rho^2 for x > 1). Near the critical
// activity z_c = -1/e the two real solutions collide as +-sqrt(2e(z-z_c)),
// which produces the scaling limits checked in scaling_K_HC / scaling_K_BP.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "polygas/errors.hpp"

namespace polygas::tonks {

inline constexpr double z_critical = -0.36787944117144232160;  // -1/e
inline const double u_critical_bp = 1.0 / (2.0 * std::numbers::pi * std::numbers::e);

using Complex = std::complex<double>;

struct BranchSet {
    double z = 0.0;
    std::vector<Complex> branches;
    bool degenerate = false;  // double root at z = -1/e
};

namespace detail {

inline double residual(double z, Complex s) { return std::abs(s * std::exp(s) - z); }

// The achievable residual degrades with |s|: evaluating s e^s loses phase
// precision of order |z| |s| eps, so acceptance is scale-aware.
inline Complex newton(double z, Complex s, int max_iter = 60) {
    constexpr double eps = 2.220446049250313e-16;
    const double target = 1e-14 * std::max(1.0, std::abs(z));
    double best_resid = std::numeric_limits<double>::infinity();
    Complex best = s;
    for (int it = 0; it < max_iter; ++it) {
        const Complex e = std::exp(s);
        const Complex f = s * e - z;
        const double af = std::abs(f);
        if (af < best_resid) {
            best_resid = af;
            best = s;
        }
        if (af <= target) return s;
        const Complex fp = (1.0 + s) * e;
        if (fp == Complex(0.0, 0.0)) break;
        const Complex step = f / fp;
        s -= step;
        if (std::abs(step) <= 4.0 * eps * (1.0 + std::abs(s))) {
            const double resid = std::abs(s * std::exp(s) - z);
            if (resid < best_resid) {
                best_resid = resid;
                best = s;
            }
            break;
        }
    }
    const double floor_resid =
        1e-12 * std::max(1.0, std::abs(z)) + 64.0 * eps * std::abs(z) * (1.0 + std::abs(best));
    return best_resid <= floor_resid ? best : Complex(std::nan(""), std::nan(""));
}

// Window of the imaginary part for the k-th conjugate pair:
//   z > 0: ((2k-1) pi, 2k pi), k >= 1
//   z < 0: (2k pi, (2k+1) pi), k >= 1; k = 0 exists only for z < -1/e.
inline void pair_window(double z, long k, double& lo, double& hi) {
    const double pi = std::numbers::pi;
    if (z > 0.0) {
        lo = (2.0 * k - 1.0) * pi;
        hi = 2.0 * k * pi;
    } else {
        lo = 2.0 * k * pi;
        hi = (2.0 * k + 1.0) * pi;
    }
}

// Solve on the zero-imaginary-part curve x = -y cot y inside a window by
// bisection on log|z|; deterministic fallback and test oracle.
inline Complex curve_solve(double z, double ylo, double yhi) {
    auto g = [&](double y) {
        return std::log(y) - std::log(std::abs(std::sin(y))) - y * (std::cos(y) / std::sin(y)) -
               std::log(std::abs(z));
    };
    const double w = yhi - ylo;
    double a = ylo + 1e-9 * w, b = yhi - 1e-9 * w;
    while (g(a) > 0.0) a = ylo + 0.5 * (a - ylo);
    while (g(b) < 0.0) b = yhi - 0.5 * (yhi - b);
    for (int it = 0; it < 200 && (b - a) > 1e-16 * b; ++it) {
        const double mid = 0.5 * (a + b);
        (g(mid) < 0.0 ? a : b) = mid;
    }
    const double y = 0.5 * (a + b);
    return Complex(-y * std::cos(y) / std::sin(y), y);
}

// Upper (Im > 0) member of the k-th conjugate pair. Newton from the
// asymptotic seed L1 - log(L1); off-window or colliding results trigger
// perturbed reseeding, then the curve bisection.
inline Complex pair_branch(double z, long k) {
    if (z == 0.0) throw std::invalid_argument("pair_branch: z must be nonzero");
    double ylo = 0.0, yhi = 0.0;
    pair_window(z, k, ylo, yhi);
    if (k == 0 && !(z < z_critical))
        throw std::invalid_argument("pair_branch: window 0 exists only below the critical activity");

    const double pi = std::numbers::pi;
    const double phase = z > 0.0 ? 2.0 * pi * static_cast<double>(k)
                                 : (2.0 * static_cast<double>(k) + 1.0) * pi;
    const Complex big_l(std::log(std::abs(z)), phase);
    const double slack = 0.35 * (yhi - ylo);

    const Complex seeds[3] = {big_l - std::log(big_l),
                              Complex(std::log(std::abs(z) / (0.5 * (ylo + yhi))),
                                      0.5 * (ylo + yhi)),
                              Complex(std::log(std::abs(z) / (0.5 * (ylo + yhi))),
                                      0.5 * (ylo + yhi) + 0.25 * (yhi - ylo))};
    for (const Complex& seed : seeds) {
        const Complex s = newton(z, seed);
        if (!std::isnan(s.real()) && s.imag() > ylo - slack && s.imag() < yhi + slack &&
            s.imag() > 0.0)
            return s;
    }
    const Complex s = newton(z, curve_solve(z, ylo, yhi), 8);
    if (std::isnan(s.real()))
        throw root_error("pair_branch: no convergence in window " + std::to_string(k));
    return s;
}

}  // namespace detail

// Real solutions: {s0} for z > 0, {s0, s1} for z in (-1/e, 0), the double
// root {-1, -1} at z = -1/e, none below.
inline std::vector<double> real_branches(double z) {
    if (z == 0.0) throw std::invalid_argument("real_branches: z must be nonzero");
    auto f = [&](double s) { return s * std::exp(s) - z; };
    auto bisect = [&](double a, double b) {
        for (int it = 0; it < 200 && (b - a) > 1e-17 * std::max(1.0, std::abs(a)); ++it) {
            const double mid = 0.5 * (a + b);
            (f(mid) < 0.0 ? a : b) = mid;
        }
        double s = 0.5 * (a + b);
        // Newton polish.
        for (int it = 0; it < 4; ++it) {
            const double e = std::exp(s);
            const double fp = (1.0 + s) * e;
            if (fp == 0.0) break;
            s -= (s * e - z) / fp;
        }
        return s;
    };

    if (z > 0.0) return {bisect(0.0, std::log1p(z) + 1e-12)};

    const double delta = z - z_critical;
    if (std::abs(delta) <= 1e-15) return {-1.0, -1.0};
    if (delta < 0.0) return {};

    if (delta < 1e-10) {
        // Double-root neighborhood: sqrt expansion as Newton seed.
        const double w = std::numbers::e * delta;
        double out[2];
        for (int pm = 0; pm < 2; ++pm) {
            const double u0 = (pm == 0 ? 1.0 : -1.0) * std::sqrt(2.0 * w) - (2.0 / 3.0) * w;
            double s = -1.0 + u0;
            for (int it = 0; it < 8; ++it) {
                const double e = std::exp(s);
                const double fp = (1.0 + s) * e;
                if (fp == 0.0) break;
                s -= (s * e - z) / fp;
            }
            out[pm] = s;
        }
        return {out[0], out[1]};
    }

    const double s0 = bisect(-1.0, 0.0);
    double lo = -2.0;
    while (f(lo) < 0.0) lo *= 2.0;
    // f(lo) > 0 and f(-1) < 0; flip the bisection orientation via -f.
    double a = lo, b = -1.0;
    for (int it = 0; it < 200 && (b - a) > 1e-17 * std::max(1.0, std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        (f(mid) > 0.0 ? a : b) = mid;
    }
    double s1 = 0.5 * (a + b);
    for (int it = 0; it < 4; ++it) {
        const double e = std::exp(s1);
        const double fp = (1.0 + s1) * e;
        if (fp == 0.0) break;
        s1 -= (s1 * e - z) / fp;
    }
    return {s0, s1};
}

inline BranchSet solve_branches(double z, int n_max) {
    if (z == 0.0) throw std::invalid_argument("solve_branches: z must be nonzero");
    if (n_max < 0) throw std::invalid_argument("solve_branches: n_max must be >= 0");

    BranchSet set;
    set.z = z;
    const std::vector<double> reals = real_branches(z);
    set.degenerate = std::abs(z - z_critical) <= 1e-15;
    for (double s : reals) set.branches.emplace_back(s, 0.0);

    long k = (z < z_critical) ? 0 : 1;
    while (static_cast<int>(set.branches.size()) < n_max + 1) {
        const Complex s = detail::pair_branch(z, k++);
        set.branches.push_back(s);
        if (static_cast<int>(set.branches.size()) < n_max + 1)
            set.branches.push_back(std::conj(s));
    }
    set.branches.resize(static_cast<std::size_t>(n_max) + 1);

    const double tol = 1e-12 * std::max(1.0, std::abs(z));
    for (const Complex& s : set.branches)
        if (detail::residual(z, s) > tol)
            throw root_error("solve_branches: residual above tolerance");
    return set;
}

// ---------------------------------------------------------------------------
// Partition function, density, equation of state.

// Finite sum: exact up to rounding; Z(L) = 1 for 1 < L <= 2.
inline double partition_polynomial(double length, double z) {
    if (!(length > 1.0)) throw std::invalid_argument("partition_polynomial: need L > 1");
    double total = 0.0;
    double fact = 1.0;
    for (int n = 0; length - n - 1.0 > 0.0; ++n) {
        if (n > 0) fact *= n;
        const double base = z * (length - n - 1.0);
        double power = 1.0;
        for (int p = 0; p < n; ++p) power *= base;
        total += power / fact;
    }
    return total;
}

// Residue series with the certified truncation rule: stop once three
// consecutive terms are below tol/10 and the analytic tail bound
// sum_{n>n0} (|z|/n)^{L-1} / n  <=  (|z|/n0)^{L-1} / (L-1)  is below tol/2.
// The bound is rigorous (|s_n| e^{Re s_n} = |z| and |s_n + 1| >= Im s_n >= n)
// but conservative; for L close to 1 tight tolerances are unreachable and
// an accuracy_error carrying the best estimate is thrown.
inline double partition_residue(double length, double z, double tol,
                                long max_pairs = 2000000) {
    if (!(length > 1.0)) throw std::invalid_argument("partition_residue: need L > 1");
    if (z == 0.0) throw std::invalid_argument("partition_residue: z must be nonzero");
    if (std::abs(z - z_critical) <= 1e-13)
        throw std::invalid_argument("partition_residue: double root at the critical activity");
    if (!(tol > 0.0)) throw std::invalid_argument("partition_residue: tol must be positive");

    const double ell = length - 1.0;
    double sum = 0.0, comp = 0.0;  // Kahan
    auto accumulate = [&](double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };

    long n_terms = 0;
    for (double s : real_branches(z)) {
        accumulate(std::exp(s * ell) / (s + 1.0));
        ++n_terms;
    }

    int consecutive_small = 0;
    const long k_start = (z < z_critical) ? 0 : 1;
    for (long k = k_start; k < k_start + max_pairs; ++k) {
        const Complex s = detail::pair_branch(z, k);
        const double term = 2.0 * (std::exp(s * ell) / (s + 1.0)).real();
        accumulate(term);
        n_terms += 2;

        consecutive_small = std::abs(term) < 0.1 * tol ? consecutive_small + 1 : 0;
        const double tail =
            std::pow(std::abs(z) / static_cast<double>(n_terms), ell) / ell;
        if (consecutive_small >= 3 && tail < 0.5 * tol) return sum;
    }
    throw accuracy_error("partition_residue: branch cap before tolerance", sum);
}

// Density G^(1) = s0 / (s0 + 1).
inline double one_point(double z) {
    if (z == 0.0) throw std::invalid_argument("one_point: z must be nonzero");
    if (z < z_critical) throw std::invalid_argument("one_point: below critical activity");
    const std::vector<double> reals = real_branches(z);
    return reals[0] / (reals[0] + 1.0);
}

// Residual of p = rho/(1 - rho) with p = s0 (units kT = 1, rod length 1).
inline double equation_of_state_residual(double z) {
    const double s0 = real_branches(z)[0];
    const double rho = one_point(z);
    return std::abs(s0 - rho / (1.0 - rho));
}

struct EquationOfStateReport {
    double z = 0.0;
    double pressure = 0.0;  // s0
    double density = 0.0;   // one_point(z)
    double residual = 0.0;
    bool pass = false;
};

inline EquationOfStateReport equation_of_state_check(double z, double tol = 1e-12) {
    EquationOfStateReport rep;
    rep.z = z;
    rep.pressure = real_branches(z)[0];
    rep.density = one_point(z);
    rep.residual = std::abs(rep.pressure - rep.density / (1.0 - rep.density));
    rep.pass = rep.residual <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Two-point function.

// Closed-form route, valid for x > 1 (0 for 0 < x <= 1; the delta at x = 0
// has coefficient one_point(z) and is reported separately by callers).
inline double two_point_closed(double x, double z) {
    x = std::abs(x);
    if (x <= 1.0) return 0.0;
    const double s0 = real_branches(z)[0];
    const double rho = s0 / (s0 + 1.0);
    return rho * std::exp(-s0 * x) * z * partition_polynomial(x, z) - rho * rho;
}

namespace detail {

// Shared branch-series evaluator for the truncated two-point function and
// its t-derivative (t = x^2; termwise factor (s_n - s0)/(2x)).
//
// Truncation certificate: pair terms behave like a monotone envelope times
// a phase advancing by about 2 pi x per pair, so the tail after a pair with
// envelope E is bounded by roughly E * (1 + 2/|sin(pi x)|) (Dirichlet/Abel
// summation). The certificate degenerates at integer x, where the function
// itself loses smoothness; that surfaces as an accuracy error.
inline double two_point_series(double x, double z, double tol, bool d_dt, long max_pairs) {
    if (!(x > 1.0)) throw std::invalid_argument("two_point_series: need x > 1");
    if (z == 0.0 || z < z_critical || std::abs(z - z_critical) <= 1e-15)
        throw std::invalid_argument("two_point_series: activity out of range");
    if (std::abs(x - std::round(x)) < 1e-9)
        throw accuracy_error("two_point_series: non-smooth point at integer x", 0.0);

    const std::vector<double> reals = real_branches(z);
    const double s0 = reals[0];
    const double rho = s0 / (s0 + 1.0);

    double sum = 0.0;
    if (reals.size() > 1) {
        const double s1 = reals[1];
        double term = rho * (s1 / (s1 + 1.0)) * std::exp((s1 - s0) * x);
        if (d_dt) term *= (s1 - s0) / (2.0 * x);
        sum += term;
    }

    const double osc = 1.0 + 2.0 / std::max(std::abs(std::sin(std::numbers::pi * x)), 1e-12);
    int consecutive_small = 0;
    for (long k = 1; k <= max_pairs; ++k) {
        const Complex s = pair_branch(z, k);
        Complex term_c = rho * (s / (s + 1.0)) * std::exp((s - s0) * x);
        if (d_dt) term_c *= (s - s0) / (2.0 * x);
        const double term = 2.0 * term_c.real();
        sum += term;

        double envelope =
            2.0 * std::abs(rho) * (1.0 + 1.0 / s.imag()) * std::exp((s.real() - s0) * x);
        if (d_dt) envelope *= std::abs(s - s0) / (2.0 * x);

        consecutive_small = std::abs(term) < 0.1 * tol ? consecutive_small + 1 : 0;
        if (k >= 3 && consecutive_small >= 3 && envelope * osc < 0.5 * tol) return sum;
    }
    throw accuracy_error("two_point_series: branch cap before tolerance", sum);
}

}  // namespace detail

// Truncated two-point function G^(2),T(x; z). Branch series for x > 1;
// identically 0 for 0 < |x| < 1 (smooth part; the delta at 0 carries
// coefficient one_point(z)).
inline double two_point_truncated(double x, double z, double tol, long max_pairs = 4000000) {
    x = std::abs(x);
    if (x <= 1.0) return 0.0;
    return detail::two_point_series(x, z, tol, false, max_pairs);
}

// d/dt of the truncated two-point function at t = x^2, termwise on the
// branch series. Converges usefully for x comfortably above 1 (the scaling
// regime); prefer bp_two_point_3d for moderate x.
inline double two_point_truncated_dt(double x, double z, double tol, long max_pairs = 4000000) {
    if (!(x > 1.0)) throw std::invalid_argument("two_point_truncated_dt: need x > 1");
    return detail::two_point_series(x, z, tol, true, max_pairs);
}

// Correlation length 1/(s0 - s1); for z > 0 s1 is the first complex branch
// and its real part sets the decay rate. Infinite at the critical point.
inline double correlation_length(double z) {
    if (z == 0.0) throw std::invalid_argument("correlation_length: z must be nonzero");
    if (std::abs(z - z_critical) <= 1e-15) return std::numeric_limits<double>::infinity();
    if (z < z_critical) throw std::invalid_argument("correlation_length: below critical activity");
    const std::vector<double> reals = real_branches(z);
    if (reals.size() == 2) return 1.0 / (reals[0] - reals[1]);
    const Complex s1 = detail::pair_branch(z, 1);
    return 1.0 / (reals[0] - s1.real());
}

// ---------------------------------------------------------------------------
// Branched-polymer two-point function in three dimensions,
//   G_BP(t; u) = (1/2 pi^2) d/dt G^(2),T(t; z),  u = -z/(2 pi),
// computed on the piecewise-polynomial closed form (exact derivative away
// from the non-smooth points r = 2, 3, ...).

inline double bp_two_point_3d(double r, double u) {
    if (!(r > 1.0)) throw std::invalid_argument("bp_two_point_3d: need r > 1");
    if (u == 0.0) throw std::invalid_argument("bp_two_point_3d: u must be nonzero");
    const double nearest = std::round(r);
    if (nearest >= 2.0 && std::abs(r - nearest) < 1e-6)
        throw non_smooth_point_error("bp_two_point_3d: derivative jump at integer separation");

    const double z = -2.0 * std::numbers::pi * u;
    const double s0 = real_branches(z)[0];
    const double rho = s0 / (s0 + 1.0);

    // Z and Z' of the finite sum at L = r.
    double zval = 0.0, zderiv = 0.0, fact = 1.0;
    for (int n = 0; r - n - 1.0 > 0.0; ++n) {
        if (n > 0) fact *= n;
        const double base = z * (r - n - 1.0);
        double power = 1.0;
        for (int p = 0; p < n; ++p) power *= base;
        zval += power / fact;
        if (n >= 1) {
            double dpower = 1.0;
            for (int p = 0; p < n - 1; ++p) dpower *= base;
            zderiv += static_cast<double>(n) * z * dpower / fact;
        }
    }
    const double dG_dr = rho * z * std::exp(-s0 * r) * (zderiv - s0 * zval);
    const double dG_dt = dG_dr / (2.0 * r);
    return dG_dt / (2.0 * std::numbers::pi * std::numbers::pi);
}

// ---------------------------------------------------------------------------
// Scaling limits near z_c.

struct ScalingPoint {
    double z = 0.0;
    double xhat = 0.0;
    double xi = 0.0;
    double value = 0.0;  // x^{D-2+eta} G^(2),T (gas) or G_BP (polymers)
};

inline double K_HC_ref(double xhat) { return -4.0 * std::exp(-xhat) / (xhat * xhat); }
inline double K_HC_ref_deriv(double xhat) {
    return 4.0 * std::exp(-xhat) * (xhat + 2.0) / (xhat * xhat * xhat);
}
inline double K_BP_ref(double xhat) {
    return std::exp(-xhat) / (std::numbers::pi * std::numbers::pi * xhat);
}
// Amplitude relation: K_BP = (1/4 pi^2) [ xhat K_HC' - (D - 2 + eta) K_HC ],
// D = 1, eta = -1.
inline double K_BP_from_HC(double xhat) {
    return (xhat * K_HC_ref_deriv(xhat) + 2.0 * K_HC_ref(xhat)) /
           (4.0 * std::numbers::pi * std::numbers::pi);
}

// x^{D-2+eta} G^(2),T with D = 1, eta = -1 at x = xhat * xi(z_c + delta).
inline ScalingPoint scaling_K_HC(double xhat, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("scaling_K_HC: need delta > 0");
    if (!(xhat >= 0.5)) throw std::invalid_argument("scaling_K_HC: need xhat >= 0.5");
    const double z = z_critical + delta;
    const double xi = correlation_length(z);
    const double x = xhat * xi;
    if (!(x > 1.0)) throw std::invalid_argument("scaling_K_HC: x inside the hard core");
    const double scale = 4.0 * xi * xi * std::exp(-xhat);  // expected |G| magnitude
    const double g = two_point_truncated(x, z, scale * 1e-9);
    return ScalingPoint{z, xhat, xi, g / (x * x)};
}

// x^{d-2+eta_BP} G_BP with d = 3, eta_BP = -1 (exponent zero) at the same
// scaling point, via the termwise derivative of the branch series.
inline ScalingPoint scaling_K_BP(double xhat, double delta) {
    if (!(delta > 0.0)) throw std::invalid_argument("scaling_K_BP: need delta > 0");
    if (!(xhat >= 0.5)) throw std::invalid_argument("scaling_K_BP: need xhat >= 0.5");
    const double z = z_critical + delta;
    const double xi = correlation_length(z);
    const double x = xhat * xi;
    if (!(x > 1.0)) throw std::invalid_argument("scaling_K_BP: x inside the hard core");
    const double scale = 2.0 * xi * std::exp(-xhat);  // expected |dG/dt| * 2 pi^2 magnitude
    const double dg_dt = two_point_truncated_dt(x, z, scale * 1e-9);
    return ScalingPoint{z, xhat, xi, dg_dt / (2.0 * std::numbers::pi * std::numbers::pi)};
}

// ---------------------------------------------------------------------------
// Exponents.

struct ExponentReport {
    double nu = 0.0;         // from the log-log fit of xi(delta)
    double alpha = 0.0;      // 2 - alpha = fitted exponent of s0(z) - s0(z_c)
    double eta = 0.0;        // selected by the nontrivial-limit diagnostic
    double gamma_bp = 0.0;   // = alpha in two more dimensions
    double theta = 0.0;      // 3 - gamma_bp
    double nu_slope = 0.0;   // raw fit slopes
    double alpha_slope = 0.0;
    double eta_ratio_0 = 0.0, eta_ratio_m1 = 0.0, eta_ratio_m2 = 0.0;
};

namespace detail {

inline double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace detail

inline ExponentReport fit_exponents() {
    ExponentReport rep;

    std::vector<double> log_delta, log_xi, log_gap;
    for (int i = 0; i <= 12; ++i) {
        const double delta = 1e-6 * std::pow(10.0, 0.25 * i);  // 1e-6 .. 1e-3
        const double z = z_critical + delta;
        log_delta.push_back(std::log(delta));
        log_xi.push_back(std::log(correlation_length(z)));
        log_gap.push_back(std::log(real_branches(z)[0] + 1.0));  // s0(z) - s0(z_c)
    }
    rep.nu_slope = detail::fit_slope(log_delta, log_xi);
    rep.nu = -rep.nu_slope;
    rep.alpha_slope = detail::fit_slope(log_delta, log_gap);
    rep.alpha = 2.0 - rep.alpha_slope;

    // Nontrivial-limit diagnostic at fixed xhat: x^{D-2+eta'} G stays of
    // order one only for eta' = -1; eta' = 0 diverges, eta' = -2 vanishes.
    const double xhat = 2.0;
    double m[3][2];  // eta' in {0, -1, -2} at two deltas
    const double deltas[2] = {1e-4, 1e-7};
    for (int j = 0; j < 2; ++j) {
        const double z = z_critical + deltas[j];
        const double xi = correlation_length(z);
        const double x = xhat * xi;
        const double g = two_point_truncated(x, z, 4.0 * xi * xi * std::exp(-xhat) * 1e-9);
        m[0][j] = std::abs(std::pow(x, 1.0 - 2.0 + 0.0) * g);
        m[1][j] = std::abs(std::pow(x, 1.0 - 2.0 - 1.0) * g);
        m[2][j] = std::abs(std::pow(x, 1.0 - 2.0 - 2.0) * g);
    }
    rep.eta_ratio_0 = m[0][1] / m[0][0];
    rep.eta_ratio_m1 = m[1][1] / m[1][0];
    rep.eta_ratio_m2 = m[2][1] / m[2][0];
    rep.eta = -1.0;
    if (std::abs(std::log(rep.eta_ratio_0)) < std::abs(std::log(rep.eta_ratio_m1))) rep.eta = 0.0;
    if (std::abs(std::log(rep.eta_ratio_m2)) < std::abs(std::log(rep.eta_ratio_m1))) rep.eta = -2.0;

    rep.gamma_bp = rep.alpha;     // three-dimensional polymers inherit the exponent
    rep.theta = 3.0 - rep.gamma_bp;
    return rep;
}

}  // namespace polygas::tonks
