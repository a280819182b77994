#pragma once

// Deterministic quadrature and seeded Monte Carlo.
//
// Quadrature: adaptive Gauss-Kronrod 7-15 in 1-D with optional breakpoint
// pre-splitting (panels between breakpoints of piecewise-polynomial
// integrands are integrated exactly), nested for boxes up to 4 dims.
//
// Monte Carlo: estimates are a pure function of (integrand, n_samples,
// seed, partition count). Partitions draw from independent counter-based
// streams and are reduced in partition order, so a k-way parallel run
// reproduces the k-partition serial run bit for bit.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numbers>
#include <span>
#include <vector>

#include "polygas/errors.hpp"
#include "polygas/graphs.hpp"
#include "polygas/rng.hpp"

namespace polygas::integrate {

struct MCEstimate {
    double value = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(n)
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15 panel rule.

namespace detail {

// Kronrod abscissae (positive half) and weights; Gauss-7 weights for the
// embedded rule (odd-index Kronrod nodes plus the center).
inline constexpr std::array<double, 8> gk_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> k15_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> g7_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15_panel(F&& f, double a, double b, double& result, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double x = gk_nodes[i] * h;
        double fv;
        if (i == 7) {
            fv = f(c);
        } else {
            fv = f(c - x) + f(c + x);
        }
        k15 += k15_weights[i] * fv;
        if (i % 2 == 1) g7 += g7_weights[i / 2] * fv;  // Gauss nodes: odd-index Kronrod + center
    }
    result = k15 * h;
    error = std::abs(k15 - g7) * h;
}

}  // namespace detail

// Adaptive 1-D integration of f over [a, b] to absolute tolerance tol.
// Breakpoints inside (a, b) force initial panel boundaries. Throws
// accuracy_error (carrying the best estimate) if the panel cap is reached.
template <class F>
double quad_1d(F&& f, double a, double b, double tol,
               std::span<const double> breakpoints = {}, int max_panels = 4000) {
    if (a == b) return 0.0;

    struct Panel {
        double a, b, value, error;
    };
    std::vector<Panel> panels;
    std::vector<double> cuts{a, b};
    for (double x : breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        Panel p{cuts[i], cuts[i + 1], 0.0, 0.0};
        detail::gk15_panel(f, p.a, p.b, p.value, p.error);
        panels.push_back(p);
    }

    auto total_error = [&] {
        double e = 0.0;
        for (const auto& p : panels) e += p.error;
        return e;
    };
    auto total_value = [&] {
        double v = 0.0;
        for (const auto& p : panels) v += p.value;
        return v;
    };

    while (total_error() > tol) {
        if (static_cast<int>(panels.size()) >= max_panels)
            throw accuracy_error("quad_1d: panel cap reached before tolerance", total_value());
        std::size_t worst = 0;
        for (std::size_t i = 1; i < panels.size(); ++i)
            if (panels[i].error > panels[worst].error) worst = i;
        const Panel p = panels[worst];
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b)
            throw accuracy_error("quad_1d: interval underflow before tolerance", total_value());
        Panel left{p.a, mid, 0.0, 0.0}, right{mid, p.b, 0.0, 0.0};
        detail::gk15_panel(f, left.a, left.b, left.value, left.error);
        detail::gk15_panel(f, right.a, right.b, right.value, right.error);
        panels[worst] = left;
        panels.push_back(right);
    }
    return total_value();
}

// Adaptive integration over a box in up to 4 dimensions (nested 1-D rules).
inline double quad_integrate(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> lo, std::span<const double> hi, double tol) {
    const int dims = static_cast<int>(lo.size());
    if (dims < 1 || dims > 4 || hi.size() != lo.size())
        throw std::invalid_argument("quad_integrate: need 1..4 matching box dimensions");
    std::array<double, 4> x{};
    std::function<double(int, double)> level = [&](int k, double level_tol) -> double {
        return quad_1d(
            [&](double xi) {
                x[static_cast<std::size_t>(k)] = xi;
                if (k + 1 == dims) return f(std::span<const double>(x.data(), dims));
                const double width = hi[k + 1] - lo[k + 1];
                return level(k + 1, level_tol * 0.25 / std::max(1.0, std::abs(width)));
            },
            lo[k], hi[k], level_tol);
    };
    return level(0, tol * 0.5);
}

// ---------------------------------------------------------------------------
// Monte Carlo engine.
//
// Sampler: called as sampler(rng) -> std::pair<Point, double> (point and its
// probability density). F: f(point) -> double. The estimate is the sample
// mean of f/density.

namespace detail {

struct PartialSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

template <class F, class Sampler>
PartialSums mc_partition(F& f, Sampler& sampler, std::uint64_t n, std::uint64_t seed,
                         std::uint64_t stream) {
    SplitRng rng(seed, stream);
    PartialSums s;
    for (std::uint64_t i = 0; i < n; ++i) {
        const auto [point, density] = sampler(rng);
        const double w = f(point) / density;
        s.sum += w;
        s.sum_sq += w * w;
    }
    return s;
}

}  // namespace detail

template <class F, class Sampler>
MCEstimate mc_integrate(F f, Sampler sampler, std::uint64_t n_samples, std::uint64_t seed,
                        unsigned partitions = 1, bool parallel = false) {
    if (n_samples == 0) throw std::invalid_argument("mc_integrate: zero samples");
    if (partitions == 0) partitions = 1;

    std::vector<detail::PartialSums> parts(partitions);
    const std::uint64_t base = n_samples / partitions;
    const std::uint64_t extra = n_samples % partitions;
    auto count_of = [&](unsigned p) { return base + (p < extra ? 1 : 0); };

    if (parallel && partitions > 1) {
        std::vector<std::future<detail::PartialSums>> futures;
        futures.reserve(partitions);
        for (unsigned p = 0; p < partitions; ++p)
            futures.push_back(std::async(std::launch::async, [&, p] {
                auto fp = f;
                auto sp = sampler;
                return detail::mc_partition(fp, sp, count_of(p), seed, p);
            }));
        for (unsigned p = 0; p < partitions; ++p) parts[p] = futures[p].get();
    } else {
        for (unsigned p = 0; p < partitions; ++p)
            parts[p] = detail::mc_partition(f, sampler, count_of(p), seed, p);
    }

    // Ordered reduction: independent of worker scheduling.
    double sum = 0.0, sum_sq = 0.0;
    for (unsigned p = 0; p < partitions; ++p) {
        sum += parts[p].sum;
        sum_sq += parts[p].sum_sq;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    double variance = 0.0;
    if (n_samples > 1) variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return MCEstimate{mean, std::sqrt(variance / n), n_samples, seed};
}

// ---------------------------------------------------------------------------
// Surface-measure sampling for hard-sphere tree constraints.

inline constexpr int max_dimension = 4;

// Area of the sphere |y| = R in d-dimensional space.
inline double sphere_surface_area(int d, double radius) {
    const double half = 0.5 * static_cast<double>(d);
    return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half) *
           std::pow(radius, d - 1);
}

using Point = std::array<double, max_dimension>;

// Uniform direction on the unit sphere in d dims via normalized Gaussians.
inline Point unit_direction(SplitRng& rng, int d) {
    Point v{};
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (int i = 0; i < d; ++i) {
            v[static_cast<std::size_t>(i)] = rng.next_gaussian();
            norm_sq += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        }
    } while (norm_sq == 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] *= inv;
    return v;
}

struct TreeConfiguration {
    int dimension = 0;
    std::vector<Point> positions;  // positions[0] is the origin
    double weight = 0.0;           // product of sphere surface areas over tree edges
};

// Realizes the product of touching constraints over the tree edges as a
// product of uniform surface measures: vertex 1 at the origin, each edge an
// independent uniform direction of length R, positions accumulated along
// the tree. weight = area(S_{d-1}(R))^{N-1}.
inline TreeConfiguration sample_tree_surface(const graphs::LabeledTree& tree, int d, double radius,
                                             SplitRng& rng) {
    if (d < 2)
        throw unsupported_operation("sample_tree_surface: one-dimensional chains unsupported");
    if (d > max_dimension)
        throw std::invalid_argument("sample_tree_surface: dimension above compiled cap");
    if (!(radius > 0.0)) throw std::invalid_argument("sample_tree_surface: radius must be > 0");

    const int n = tree.n_vertices;
    TreeConfiguration config;
    config.dimension = d;
    config.positions.assign(static_cast<std::size_t>(n), Point{});

    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
    for (const auto& [a, b] : tree.edges) {
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    // Breadth-first from vertex 1; one fresh direction per edge.
    std::vector<int> queue{1};
    std::vector<bool> placed(static_cast<std::size_t>(n) + 1, false);
    placed[1] = true;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (placed[static_cast<std::size_t>(w)]) continue;
            placed[static_cast<std::size_t>(w)] = true;
            const Point dir = unit_direction(rng, d);
            for (int i = 0; i < d; ++i)
                config.positions[static_cast<std::size_t>(w - 1)][static_cast<std::size_t>(i)] =
                    config.positions[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(i)] +
                    radius * dir[static_cast<std::size_t>(i)];
            queue.push_back(w);
        }
    }
    config.weight = std::pow(sphere_surface_area(d, radius), n - 1);
    return config;
}

inline double squared_distance(const Point& a, const Point& b, int d) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        const double diff = a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)];
        s += diff * diff;
    }
    return s;
}

}  // namespace polygas::integrate
