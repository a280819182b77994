#pragma once

// Gas-side cluster (Mayer) coefficients and polymer-side tree/forest
// integrals, with order-by-order reduction checks between a D-dimensional
// repulsive gas at negative activity and (D+2)-dimensional branched
// polymers:
//
//   b_N = (-1)^{N+1} (2 pi)^{1-N} a_N.
//
// Gas coefficients come from the connected-graph expansion with bond
// factors U-1 and one vertex pinned at the origin (the infinite-volume
// limit is taken analytically). In one dimension the innermost variable is
// integrated exactly (interval-intersection length) and outer levels are
// split at all reachable breakpoints, so hard-core integrals are exact to
// machine precision. Polymer coefficients use the surface-measure
// reduction for hard spheres and ramp importance sampling for smooth
// steps.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

#include "polygas/errors.hpp"
#include "polygas/graphs.hpp"
#include "polygas/integrate.hpp"
#include "polygas/potentials.hpp"
#include "polygas/rng.hpp"

namespace polygas::cluster {

using potentials::PairPotential;
using potentials::SpeciesTable;

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

// ---------------------------------------------------------------------------
// Connected labeled graphs on {1..n}, as edge bitmasks over the K_n pair
// list (1,2),(1,3),...,(n-1,n).

inline std::vector<std::pair<int, int>> pair_list(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);
    return pairs;
}

inline std::vector<unsigned> connected_graph_masks(int n) {
    const auto pairs = pair_list(n);
    const int m = static_cast<int>(pairs.size());
    std::vector<unsigned> out;
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        graphs::detail::DisjointSet ds(n);
        int components = n;
        for (int p = 0; p < m; ++p)
            if ((mask >> p) & 1u)
                if (ds.unite(pairs[p].first, pairs[p].second)) --components;
        if (components == 1) out.push_back(mask);
    }
    return out;
}

// ---------------------------------------------------------------------------
// One-dimensional graph integral: Integral dx_2..dx_n of the product of
// f_{ij}(x_i - x_j) = U_{ij}(.^2) - 1 over the edges, x_1 = 0.
// PotFn(i, j) -> const PairPotential& (1-based vertices, i < j).

namespace detail {

inline std::vector<int> bfs_order_from_1(int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> order{1};
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    seen[1] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
        for (int w : adj[static_cast<std::size_t>(order[head])])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                order.push_back(w);
            }
    }
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("graph_integral_1d: graph not connected");
    return order;
}

// All subset sums (sizes 1..n-1) of the pair interaction ranges; used as
// breakpoint offsets so every quadrature panel sees a polynomial piece.
inline std::vector<double> offset_sums(const std::vector<double>& ranges, int max_terms) {
    std::vector<double> sums{0.0};
    for (int t = 0; t < max_terms; ++t) {
        std::vector<double> next = sums;
        for (double s : sums)
            for (double r : ranges) next.push_back(s + r);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end(),
                               [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                   next.end());
        sums = std::move(next);
    }
    return sums;
}

}  // namespace detail

template <class PotFn>
double graph_integral_1d(int n, const std::vector<std::pair<int, int>>& edges, PotFn&& pot,
                         double tol) {
    if (n == 1) return 1.0;
    const std::vector<int> order = detail::bfs_order_from_1(n, edges);

    // Edge lookup and interaction ranges (sqrt of the squared-distance ramp top).
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& [a, b] : edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<double> ranges;
    for (const auto& [a, b] : edges) {
        ranges.push_back(std::sqrt(pot(a, b).ramp_hi()));
        ranges.push_back(std::sqrt(pot(a, b).ramp_lo()));
    }
    std::sort(ranges.begin(), ranges.end());
    ranges.erase(std::unique(ranges.begin(), ranges.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 ranges.end());
    const std::vector<double> offsets = detail::offset_sums(ranges, n - 1);

    std::vector<double> pos(static_cast<std::size_t>(n) + 1, 0.0);

    std::function<double(int, double)> level = [&](int k, double level_tol) -> double {
        const int v = order[static_cast<std::size_t>(k)];
        // Window from edges to already-placed vertices.
        double lo = -1e300, hi = 1e300;
        bool all_hard = true;
        std::vector<int> placed_nbrs;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            bool placed = false;
            for (int q = 0; q < k; ++q)
                if (order[static_cast<std::size_t>(q)] == w) placed = true;
            if (!placed) continue;
            placed_nbrs.push_back(w);
            const PairPotential& p = pot(std::min(v, w), std::max(v, w));
            const double range = std::sqrt(p.ramp_hi());
            lo = std::max(lo, pos[static_cast<std::size_t>(w)] - range);
            hi = std::min(hi, pos[static_cast<std::size_t>(w)] + range);
            if (!p.is_surface_delta()) all_hard = false;
        }
        if (hi <= lo) return 0.0;

        if (k == n - 1 && all_hard) {
            // Innermost hard-core level: the bond product is (-1)^deg on the
            // window, so the integral is exact.
            double sign = placed_nbrs.size() % 2 == 0 ? 1.0 : -1.0;
            return sign * (hi - lo);
        }

        std::vector<double> breaks;
        for (int q = 0; q < k; ++q) {
            const double x = pos[static_cast<std::size_t>(order[static_cast<std::size_t>(q)])];
            for (double o : offsets) {
                breaks.push_back(x + o);
                breaks.push_back(x - o);
            }
        }
        auto integrand = [&](double x) {
            double direct = 1.0;
            for (int w : placed_nbrs) {
                const PairPotential& p = pot(std::min(v, w), std::max(v, w));
                const double diff = pos[static_cast<std::size_t>(w)] - x;
                direct *= p.value(diff * diff) - 1.0;
            }
            if (direct == 0.0) return 0.0;
            if (k == n - 1) return direct;
            pos[static_cast<std::size_t>(v)] = x;
            return direct * level(k + 1, level_tol * 0.1);
        };
        return integrate::quad_1d(integrand, lo, hi, level_tol, breaks);
    };

    return level(1, tol);
}

// ---------------------------------------------------------------------------
// Gas coefficients.

struct GasCoefficients {
    int D = 0;
    int order = 0;
    std::vector<double> b;  // b[0] = 0, b[1] = 1
};

namespace detail {

// Two-dimensional bond integral Integral_{R^2} (U(|x|^2) - 1) d^2x.
inline double bond_integral_2d(const PairPotential& pot, double tol) {
    const double top = pot.ramp_hi();
    const double bp[] = {pot.ramp_lo()};
    return std::numbers::pi *
           integrate::quad_1d([&](double t) { return pot.value(t) - 1.0; }, 0.0, top, tol,
                              std::span<const double>(bp, 1));
}

// Triangle graph on 3 vertices in two dimensions.
inline double triangle_integral_2d(const PairPotential& pot, double tol) {
    const double pi = std::numbers::pi;
    if (pot.is_surface_delta()) {
        const double R = pot.radius();
        // Exact inner angular measure: arc where |x2 - x3| < R.
        auto arc = [&](double r2, double r3) {
            const double c = (r2 * r2 + r3 * r3 - R * R) / (2.0 * r2 * r3);
            return 2.0 * std::acos(std::clamp(c, -1.0, 1.0));
        };
        return -2.0 * pi *
               integrate::quad_1d(
                   [&](double r2) {
                       const double bp[] = {R - r2};
                       return r2 * integrate::quad_1d(
                                       [&](double r3) { return r3 * arc(r2, r3); }, 0.0, R,
                                       tol * 0.1, std::span<const double>(bp, 1));
                   },
                   0.0, R, tol);
    }
    const double w = std::sqrt(pot.ramp_hi());
    auto f = [&](double t) { return pot.value(t) - 1.0; };
    return 2.0 * pi *
           integrate::quad_1d(
               [&](double r2) {
                   return r2 * integrate::quad_1d(
                                   [&](double r3) {
                                       return r3 * integrate::quad_1d(
                                                       [&](double th) {
                                                           const double t23 =
                                                               r2 * r2 + r3 * r3 -
                                                               2.0 * r2 * r3 * std::cos(th);
                                                           return f(t23);
                                                       },
                                                       0.0, 2.0 * pi, tol * 0.02) *
                                              f(r3 * r3);
                                   },
                                   0.0, w, tol * 0.1) *
                          f(r2 * r2);
               },
               0.0, w, tol);
}

}  // namespace detail

inline GasCoefficients mayer_coefficients(const PairPotential& pot, int D, int n_max,
                                          double quad_tol = 1e-10) {
    if (D < 0 || D > 2) throw size_error("mayer_coefficients: D must be 0, 1, or 2");
    if (n_max < 1 || n_max > 4) throw size_error("mayer_coefficients: order must be 1..4");
    if (D == 2 && n_max > 3) throw size_error("mayer_coefficients: D=2 supports order <= 3");

    GasCoefficients out;
    out.D = D;
    out.order = n_max;
    out.b.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    out.b[1] = 1.0;

    for (int N = 2; N <= n_max; ++N) {
        const auto pairs = pair_list(N);
        double sum = 0.0;
        for (unsigned mask : connected_graph_masks(N)) {
            std::vector<std::pair<int, int>> edges;
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if ((mask >> p) & 1u) edges.push_back(pairs[p]);

            double ig = 0.0;
            if (D == 0) {
                ig = std::pow(pot.value(0.0) - 1.0, static_cast<double>(edges.size()));
            } else if (D == 1) {
                ig = graph_integral_1d(N, edges, [&](int, int) -> const PairPotential& { return pot; },
                                       quad_tol);
            } else {
                const double bond = detail::bond_integral_2d(pot, quad_tol);
                if (edges.size() == 1) {
                    ig = bond;
                } else if (edges.size() == 2) {
                    ig = bond * bond;  // two-edge paths factorize
                } else {
                    ig = detail::triangle_integral_2d(pot, quad_tol);
                }
            }
            sum += ig;
        }
        out.b[static_cast<std::size_t>(N)] = sum / factorial(N);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polymer coefficients.

struct CoeffValue {
    double value = 0.0;
    double stderr_ = 0.0;
    bool exact = true;
};

struct PolymerCoefficients {
    int d = 3;
    int order = 0;
    std::vector<CoeffValue> a;  // a[1] = 1 exactly
};

// Per-edge mass of the bond derivative: Integral 2 U'(|y|^2) d^d y.
inline double edge_mass(const PairPotential& pot, int d, double quad_tol = 1e-12) {
    if (pot.is_surface_delta())
        return integrate::sphere_surface_area(d, pot.radius()) / pot.radius();
    const double bp[] = {1.0};
    return integrate::sphere_surface_area(d, 1.0) *
           integrate::quad_1d(
               [&](double t) { return pot.derivative(t) * std::pow(t, 0.5 * d - 1.0); },
               pot.ramp_lo(), pot.ramp_hi(), quad_tol, std::span<const double>(bp, 1));
}

namespace detail {

struct TreePlan {
    std::vector<std::pair<int, int>> bfs_edges;  // (parent, child), fill order
    std::vector<std::pair<int, int>> non_tree;   // pairs i<j outside the tree
};

inline TreePlan make_plan(const graphs::LabeledTree& tree) {
    TreePlan plan;
    const int n = tree.n_vertices;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& [a, b] : tree.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    std::vector<int> queue{1};
    std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
    placed[1] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!placed[static_cast<std::size_t>(w)]) {
                placed[static_cast<std::size_t>(w)] = true;
                plan.bfs_edges.emplace_back(v, w);
                queue.push_back(w);
            }
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const graphs::Edge e = graphs::make_edge(i, j);
            if (std::find(tree.edges.begin(), tree.edges.end(), e) == tree.edges.end())
                plan.non_tree.emplace_back(i, j);
        }
    return plan;
}

}  // namespace detail

inline PolymerCoefficients bp_coefficients(const PairPotential& pot, int d, int n_max,
                                           std::uint64_t samples, std::uint64_t seed) {
    if (d < 2 || d > 3) throw size_error("bp_coefficients: d must be 2 or 3");
    if (n_max < 1 || n_max > 5) throw size_error("bp_coefficients: order must be 1..5");
    if (samples == 0) throw std::invalid_argument("bp_coefficients: zero sample budget");

    PolymerCoefficients out;
    out.d = d;
    out.order = n_max;
    out.a.assign(static_cast<std::size_t>(n_max) + 1, CoeffValue{});
    out.a[1] = CoeffValue{1.0, 0.0, true};

    const double w_edge = edge_mass(pot, d);
    if (n_max >= 2) out.a[2] = CoeffValue{0.5 * w_edge, 0.0, true};

    const bool hard = pot.is_surface_delta();
    const double R = pot.radius();
    const double r_lo = hard ? R : std::sqrt(pot.ramp_lo());
    const double r_hi = hard ? R : std::sqrt(pot.ramp_hi());
    const double area_unit = integrate::sphere_surface_area(d, 1.0);

    for (int N = 3; N <= n_max; ++N) {
        std::vector<detail::TreePlan> plans;
        graphs::for_each_tree(N, [&](const graphs::LabeledTree& t) {
            plans.push_back(detail::make_plan(t));
        });
        const std::uint64_t per_tree = std::max<std::uint64_t>(1, samples / plans.size());

        double total = 0.0, variance = 0.0;
        for (std::size_t ti = 0; ti < plans.size(); ++ti) {
            const detail::TreePlan& plan = plans[ti];
            SplitRng rng(seed, (static_cast<std::uint64_t>(N) << 32) + ti);
            double sum = 0.0, sum_sq = 0.0;
            std::vector<integrate::Point> pos(static_cast<std::size_t>(N), integrate::Point{});
            for (std::uint64_t s = 0; s < per_tree; ++s) {
                double weight = 1.0;
                for (const auto& [parent, child] : plan.bfs_edges) {
                    const integrate::Point dir = integrate::unit_direction(rng, d);
                    double r = R;
                    if (!hard) {
                        r = r_lo + (r_hi - r_lo) * rng.next_double();
                        weight *= 2.0 * pot.derivative(r * r) * area_unit *
                                  std::pow(r, d - 1) * (r_hi - r_lo);
                    }
                    for (int i = 0; i < d; ++i)
                        pos[static_cast<std::size_t>(child - 1)][static_cast<std::size_t>(i)] =
                            pos[static_cast<std::size_t>(parent - 1)][static_cast<std::size_t>(i)] +
                            r * dir[static_cast<std::size_t>(i)];
                }
                for (const auto& [i, j] : plan.non_tree)
                    weight *= pot.value(integrate::squared_distance(
                        pos[static_cast<std::size_t>(i - 1)], pos[static_cast<std::size_t>(j - 1)], d));
                sum += weight;
                sum_sq += weight * weight;
            }
            const double n = static_cast<double>(per_tree);
            const double mean = sum / n;
            const double var =
                per_tree > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) / n : 0.0;
            const double coef = hard ? std::pow(w_edge, N - 1) / factorial(N) : 1.0 / factorial(N);
            total += coef * mean;
            variance += coef * coef * var;
        }
        out.a[static_cast<std::size_t>(N)] = CoeffValue{total, std::sqrt(variance), false};
    }
    return out;
}

// Closed-form order-3 coefficient (angular computation; any radius).
inline double bp_a3_analytic(int d, double R) {
    const double w = integrate::sphere_surface_area(d, R) / R;
    double p_allowed = 0.0;
    if (d == 3) {
        p_allowed = 0.75;  // cos uniform on [-1,1], allowed when >= -1/2
    } else if (d == 2) {
        p_allowed = 2.0 / 3.0;  // angle uniform, |theta| < 2pi/3 excluded region complement
    } else {
        throw std::invalid_argument("bp_a3_analytic: d must be 2 or 3");
    }
    return 0.5 * w * w * p_allowed;  // 3 trees / 3! = 1/2
}

// ---------------------------------------------------------------------------
// Reduction identity checks.

inline double reduction_map(int N, double a_N) {
    const double sign = (N % 2 == 0) ? -1.0 : 1.0;  // (-1)^{N+1}
    return sign * std::pow(2.0 * std::numbers::pi, 1 - N) * a_N;
}

struct OrderCheck {
    int order = 0;
    double gas = 0.0;
    double polymer_mapped = 0.0;
    double stderr_mapped = 0.0;
    bool stochastic = false;
    double abs_error = 0.0;
    bool pass = false;
};

inline std::vector<OrderCheck> check_reduction(const PairPotential& pot, int D, int n_max,
                                               std::uint64_t samples, std::uint64_t seed,
                                               double tol) {
    const GasCoefficients gas = mayer_coefficients(pot, D, n_max);
    const PolymerCoefficients poly = bp_coefficients(pot, D + 2, n_max, samples, seed);
    std::vector<OrderCheck> checks;
    for (int N = 1; N <= n_max; ++N) {
        OrderCheck c;
        c.order = N;
        c.gas = gas.b[static_cast<std::size_t>(N)];
        const CoeffValue& a = poly.a[static_cast<std::size_t>(N)];
        c.polymer_mapped = reduction_map(N, a.value);
        c.stderr_mapped = std::pow(2.0 * std::numbers::pi, 1 - N) * a.stderr_;
        c.stochastic = !a.exact;
        c.abs_error = std::abs(c.gas - c.polymer_mapped);
        c.pass = c.stochastic ? c.abs_error <= 3.0 * c.stderr_mapped : c.abs_error <= tol;
        checks.push_back(c);
    }
    return checks;
}

// ---------------------------------------------------------------------------
// Pair-correlation reduction at order z^2 and z^3 (unit hard rods, D=1,
// against unit hard spheres, d=3; separation r strictly between 1 and 2).

namespace pair {

// Gas-side activity coefficients of the two-point function with both
// particles pinned at distance r.
inline double gas_coeff2(double r) {
    return potentials::make_hard_sphere(1.0).value(r * r);
}

inline double gas_coeff3(double r, double tol = 1e-12) {
    const PairPotential u = potentials::make_hard_sphere(1.0);
    const double bp[] = {1.0, r - 1.0};
    const double integral = integrate::quad_1d(
        [&](double x) { return u.value(x * x) * u.value((x - r) * (x - r)) - 1.0; }, -1.0, r + 1.0,
        tol, std::span<const double>(bp, 2));
    return gas_coeff2(r) * integral;
}

// Polymer-side coefficient at the same order: two anchored forests, each a
// single bond from one anchor to the extra vertex, with the excluded-volume
// factor against the other anchor.
inline double polymer_coeff3_quad(double r, double tol = 1e-12) {
    const PairPotential u = potentials::make_hard_sphere(1.0);
    const double w = 4.0 * std::numbers::pi;  // unit-sphere bond mass in d=3
    const double bp[] = {r / 2.0};
    const double cap = 0.5 * integrate::quad_1d(
                                 [&](double c) { return u.value(r * r + 1.0 - 2.0 * r * c); },
                                 -1.0, 1.0, tol, std::span<const double>(bp, 1));
    return 2.0 * w * cap;
}

inline double polymer_coeff3_analytic(double r) {
    return 4.0 * std::numbers::pi + 2.0 * std::numbers::pi * r;
}

inline integrate::MCEstimate polymer_coeff3_mc(double r, std::uint64_t samples,
                                               std::uint64_t seed) {
    const PairPotential u = potentials::make_hard_sphere(1.0);
    auto sampler = [](SplitRng& rng) {
        return std::pair<integrate::Point, double>(integrate::unit_direction(rng, 3), 1.0);
    };
    auto fn = [&](const integrate::Point& dir) {
        const double dx = dir[0] - r, dy = dir[1], dz = dir[2];
        return u.value(dx * dx + dy * dy + dz * dz);
    };
    integrate::MCEstimate est = integrate::mc_integrate(fn, sampler, samples, seed);
    const double w = 4.0 * std::numbers::pi;
    est.value *= 2.0 * w;
    est.stderr_ *= 2.0 * w;
    return est;
}

// Map a polymer-side order-3 coefficient onto the gas normalization:
// (-2 pi)^2 (-1/2 pi)^3 = -1/(2 pi).
inline double map_order3(double coeff) { return -coeff / (2.0 * std::numbers::pi); }

// Order-z^3 coefficient of the connected polymer two-point function
// (two bonds meeting at the extra vertex): 2 pi / r.
inline double connected_coeff3_analytic(double r) { return 2.0 * std::numbers::pi / r; }

// Consistency of d/d(r^2) applied to the pair coefficient against half the
// connected coefficient, finite differences vs closed form.
inline double ward_residual(double r, double step = 1e-5) {
    const double t = r * r;
    const double derivative = (polymer_coeff3_quad(std::sqrt(t + step)) -
                               polymer_coeff3_quad(std::sqrt(t - step))) /
                              (2.0 * step);
    return std::abs(derivative - 0.5 * connected_coeff3_analytic(r));
}

}  // namespace pair

struct PairReduceOrder {
    int order = 0;
    double gas = 0.0;
    double polymer_quad = 0.0;      // mapped, deterministic path
    double polymer_analytic = 0.0;  // mapped, closed form
    double polymer_mc = 0.0;        // mapped, Monte Carlo path
    double polymer_mc_stderr = 0.0;
    bool pass_quad = false;
    bool pass_mc = false;
};

inline std::vector<PairReduceOrder> pair_correlation_reduction_check(double r, int order_max,
                                                                     std::uint64_t samples,
                                                                     std::uint64_t seed,
                                                                     double tol) {
    if (!(r > 1.0 && r < 2.0))
        throw std::invalid_argument("pair_correlation_reduction_check: need 1 < r < 2");
    if (order_max < 2 || order_max > 3)
        throw std::invalid_argument("pair_correlation_reduction_check: orders 2..3 supported");

    std::vector<PairReduceOrder> out;
    {
        PairReduceOrder o;
        o.order = 2;
        o.gas = pair::gas_coeff2(r);
        // Empty-forest term carries no integral; the mapping prefactors cancel.
        o.polymer_quad = o.polymer_analytic = o.polymer_mc = o.gas;
        o.pass_quad = o.pass_mc = true;
        out.push_back(o);
    }
    if (order_max >= 3) {
        PairReduceOrder o;
        o.order = 3;
        o.gas = pair::gas_coeff3(r);
        o.polymer_quad = pair::map_order3(pair::polymer_coeff3_quad(r));
        o.polymer_analytic = pair::map_order3(pair::polymer_coeff3_analytic(r));
        const integrate::MCEstimate mc = pair::polymer_coeff3_mc(r, samples, seed);
        o.polymer_mc = pair::map_order3(mc.value);
        o.polymer_mc_stderr = mc.stderr_ / (2.0 * std::numbers::pi);
        o.pass_quad = std::abs(o.gas - o.polymer_quad) <= tol;
        o.pass_mc = std::abs(o.gas - o.polymer_mc) <= 3.0 * o.polymer_mc_stderr;
        out.push_back(o);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Multispecies reduction (D=1 gas, d=3 polymers, hard cores).

namespace multispecies {

template <class Fn>
void for_each_assignment(int n_species, int N, Fn&& fn) {
    std::vector<int> alpha(static_cast<std::size_t>(N), 0);
    while (true) {
        fn(alpha);
        int i = N - 1;
        while (i >= 0 && alpha[static_cast<std::size_t>(i)] == n_species - 1) {
            alpha[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++alpha[static_cast<std::size_t>(i)];
    }
}

inline double gas_order(const SpeciesTable& table, int N, double quad_tol = 1e-10) {
    if (N < 1 || N > 3) throw size_error("multispecies gas_order: order must be 1..3");
    if (N == 1) {
        double s = 0.0;
        for (int a = 0; a < table.n_species(); ++a) s += table.activity(a);
        return s;
    }
    const auto pairs = pair_list(N);
    double total = 0.0;
    for_each_assignment(table.n_species(), N, [&](const std::vector<int>& alpha) {
        double act = 1.0;
        for (int i = 0; i < N; ++i) act *= table.activity(alpha[static_cast<std::size_t>(i)]);
        double b_sum = 0.0;
        for (unsigned mask : connected_graph_masks(N)) {
            std::vector<std::pair<int, int>> edges;
            for (std::size_t p = 0; p < pairs.size(); ++p)
                if ((mask >> p) & 1u) edges.push_back(pairs[p]);
            b_sum += graph_integral_1d(
                N, edges,
                [&](int i, int j) -> const PairPotential& {
                    return table.potential(alpha[static_cast<std::size_t>(i - 1)],
                                           alpha[static_cast<std::size_t>(j - 1)]);
                },
                quad_tol);
        }
        total += act * b_sum;
    });
    return total / factorial(N);
}

// Probability that the two leaves of a two-bond tree clear their own core:
// bond lengths a, b from the center, leaf separation^2 = a^2+b^2-2ab c with
// c uniform on [-1,1] (d=3).
inline double leaf_clearance(double a, double b, double c_core) {
    const double c0 = (a * a + b * b - c_core * c_core) / (2.0 * a * b);
    return std::clamp(0.5 * (c0 + 1.0), 0.0, 1.0);
}

inline double polymer_order(const SpeciesTable& table, int N) {
    if (N < 1 || N > 3) throw size_error("multispecies polymer_order: order must be 1..3");
    const double pi = std::numbers::pi;
    if (N == 1) {
        double s = 0.0;
        for (int a = 0; a < table.n_species(); ++a) s += table.activity(a);
        return s;
    }
    if (N == 2) {
        double s = 0.0;
        for_each_assignment(table.n_species(), 2, [&](const std::vector<int>& alpha) {
            s += table.activity(alpha[0]) * table.activity(alpha[1]) *
                 4.0 * pi * table.radius(alpha[0], alpha[1]);
        });
        return s / 2.0;
    }
    // N == 3: the three labeled trees are paths; identify each center.
    double s = 0.0;
    for (int center = 1; center <= 3; ++center) {
        int leaf1 = center == 1 ? 2 : 1;
        int leaf2 = center == 3 ? 2 : 3;
        for_each_assignment(table.n_species(), 3, [&](const std::vector<int>& alpha) {
            const int am = alpha[static_cast<std::size_t>(center - 1)];
            const int ap = alpha[static_cast<std::size_t>(leaf1 - 1)];
            const int aq = alpha[static_cast<std::size_t>(leaf2 - 1)];
            const double a = table.radius(am, ap);
            const double b = table.radius(am, aq);
            const double w = (4.0 * pi * a) * (4.0 * pi * b);
            double act = table.activity(am) * table.activity(ap) * table.activity(aq);
            s += act * w * leaf_clearance(a, b, table.radius(ap, aq));
        });
    }
    return s / factorial(3);
}

inline integrate::MCEstimate polymer_order3_mc(const SpeciesTable& table, std::uint64_t samples,
                                               std::uint64_t seed) {
    const double pi = std::numbers::pi;
    // Sum over trees and assignments with shared cos(theta) draws.
    struct Draw {
        double c;
    };
    auto sampler = [](SplitRng& rng) {
        return std::pair<Draw, double>(Draw{2.0 * rng.next_double() - 1.0}, 1.0);
    };
    auto fn = [&](const Draw& d) {
        double s = 0.0;
        for (int center = 1; center <= 3; ++center) {
            int leaf1 = center == 1 ? 2 : 1;
            int leaf2 = center == 3 ? 2 : 3;
            for_each_assignment(table.n_species(), 3, [&](const std::vector<int>& alpha) {
                const int am = alpha[static_cast<std::size_t>(center - 1)];
                const int ap = alpha[static_cast<std::size_t>(leaf1 - 1)];
                const int aq = alpha[static_cast<std::size_t>(leaf2 - 1)];
                const double a = table.radius(am, ap);
                const double b = table.radius(am, aq);
                const double sep_sq = a * a + b * b - 2.0 * a * b * d.c;
                const double core = table.radius(ap, aq);
                if (sep_sq >= core * core)
                    s += table.activity(am) * table.activity(ap) * table.activity(aq) *
                         (4.0 * pi * a) * (4.0 * pi * b);
            });
        }
        return s / factorial(3);
    };
    return integrate::mc_integrate(fn, sampler, samples, seed);
}

}  // namespace multispecies

inline std::vector<OrderCheck> multispecies_reduction_check(const SpeciesTable& table, int n_max,
                                                            std::uint64_t samples,
                                                            std::uint64_t seed, double tol) {
    if (n_max < 1 || n_max > 3)
        throw size_error("multispecies_reduction_check: order must be 1..3");
    std::vector<OrderCheck> out;
    for (int N = 1; N <= n_max; ++N) {
        OrderCheck c;
        c.order = N;
        c.gas = multispecies::gas_order(table, N);
        c.polymer_mapped = reduction_map(N, multispecies::polymer_order(table, N));
        c.stochastic = false;
        c.abs_error = std::abs(c.gas - c.polymer_mapped);
        c.pass = c.abs_error <= tol;
        out.push_back(c);
        if (N == 3 && samples > 0) {
            OrderCheck m;
            m.order = N;
            const integrate::MCEstimate est =
                multispecies::polymer_order3_mc(table, samples, seed);
            m.gas = c.gas;
            m.polymer_mapped = reduction_map(N, est.value);
            m.stderr_mapped = std::pow(2.0 * std::numbers::pi, 1 - N) * est.stderr_;
            m.stochastic = true;
            m.abs_error = std::abs(m.gas - m.polymer_mapped);
            m.pass = m.abs_error <= 3.0 * m.stderr_mapped;
            out.push_back(m);
        }
    }
    return out;
}

}  // namespace polygas::cluster
