#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>

#include "polygas/graphs.hpp"
#include "polygas/integrate.hpp"

using namespace polygas;
using namespace polygas::integrate;

TEST_CASE("quadrature basics") {
    CHECK(std::abs(quad_1d([](double) { return 1.0; }, 0.0, 1.0, 1e-12) - 1.0) < 1e-13);

    // Integral of exp(-t) over [0, inf) mapped to [0, 1).
    const double mapped = quad_1d(
        [](double x) {
            const double t = x / (1.0 - x);
            return std::exp(-t) / ((1.0 - x) * (1.0 - x));
        },
        0.0, 0.999999, 1e-10);
    CHECK(std::abs(mapped - 1.0) < 1e-6);

    const std::vector<double> lo{0.0, 0.0}, hi{1.0, 1.0};
    const double xy = quad_integrate(
        [](std::span<const double> x) { return x[0] * x[1]; }, lo, hi, 1e-10);
    CHECK(std::abs(xy - 0.25) < 1e-10);

    CHECK_THROWS_AS(quad_integrate([](std::span<const double>) { return 1.0; },
                                   std::vector<double>(5, 0.0), std::vector<double>(5, 1.0), 1e-6),
                    std::invalid_argument);
}

TEST_CASE("quadrature is exact on polynomials per panel") {
    const double val = quad_1d([](double x) { return std::pow(x, 10) - 3.0 * x * x; }, -1.0, 2.0,
                               1e-13);
    const double exact = (std::pow(2.0, 11) - std::pow(-1.0, 11)) / 11.0 - (8.0 - (-1.0));
    CHECK(std::abs(val - exact) < 1e-11);
}

TEST_CASE("quadrature reports unreachable tolerance with its best estimate") {
    bool thrown = false;
    try {
        quad_1d([](double x) { return x >= 0.333333333 ? 1.0 : 0.0; }, 0.0, 1.0, 1e-13, {}, 8);
    } catch (const accuracy_error& e) {
        thrown = true;
        CHECK(std::abs(e.best_estimate() - (1.0 - 0.333333333)) < 1e-2);
    }
    CHECK(thrown);
}

TEST_CASE("monte carlo estimator") {
    SECTION("constant integrand has zero standard error") {
        const auto est = mc_integrate([](double) { return 2.5; },
                                      [](SplitRng& rng) {
                                          return std::pair<double, double>(rng.next_double(), 1.0);
                                      },
                                      1000, 7);
        CHECK(est.value == 2.5);
        CHECK(est.stderr_ == 0.0);
        CHECK(est.n_samples == 1000);
    }
    SECTION("unit-disk indicator under uniform square sampling") {
        auto sampler = [](SplitRng& rng) {
            return std::pair<std::array<double, 2>, double>(
                {rng.next_double(), rng.next_double()}, 1.0);
        };
        const auto est = mc_integrate(
            [](const std::array<double, 2>& p) {
                return p[0] * p[0] + p[1] * p[1] <= 1.0 ? 1.0 : 0.0;
            },
            sampler, 200000, 12);
        CHECK(std::abs(est.value - std::numbers::pi / 4.0) <= 3.0 * est.stderr_);
    }
    SECTION("same seed reproduces the value bit for bit") {
        auto run = [] {
            return mc_integrate([](double x) { return std::sin(x); },
                                [](SplitRng& rng) {
                                    return std::pair<double, double>(rng.next_double(), 1.0);
                                },
                                50000, 99, 4);
        };
        const auto a = run();
        const auto b = run();
        CHECK(a.value == b.value);
        CHECK(a.stderr_ == b.stderr_);
    }
    SECTION("zero samples is an argument error") {
        CHECK_THROWS_AS(mc_integrate([](double) { return 1.0; },
                                     [](SplitRng& rng) {
                                         return std::pair<double, double>(rng.next_double(), 1.0);
                                     },
                                     0, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("parallel partitions reproduce the serial partitioned result exactly") {
    auto fn = [](double x) { return x * x * std::exp(x); };
    auto sampler = [](SplitRng& rng) {
        return std::pair<double, double>(rng.next_double(), 1.0);
    };
    const auto serial = mc_integrate(fn, sampler, 100001, 2024, 8, false);
    const auto parallel = mc_integrate(fn, sampler, 100001, 2024, 8, true);
    CHECK(serial.value == parallel.value);
    CHECK(serial.stderr_ == parallel.stderr_);
}

TEST_CASE("estimates land within four standard errors for nearly all seeds") {
    // Gaussian-sampler test integrand with a known value: the second moment
    // of N(0,1) is 1.
    auto gauss_density = [](double x) {
        return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
    };
    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto est = mc_integrate(
            [&](double x) { return x * x * gauss_density(x); },
            [&](SplitRng& rng) {
                const double x = rng.next_gaussian();
                return std::pair<double, double>(x, gauss_density(x));
            },
            100000, seed);
        if (std::abs(est.value - 1.0) <= 4.0 * est.stderr_) ++hits;
    }
    CHECK(hits >= 99);
}

TEST_CASE("uniform sphere directions pass an octant chi-squared test") {
    SplitRng rng(4242, 0);
    std::array<int, 8> counts{};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const Point dir = unit_direction(rng, 3);
        const int octant =
            (dir[0] > 0 ? 1 : 0) + (dir[1] > 0 ? 2 : 0) + (dir[2] > 0 ? 4 : 0);
        ++counts[static_cast<std::size_t>(octant)];
    }
    const double expected = n / 8.0;
    double chi_sq = 0.0;
    for (int c : counts) chi_sq += (c - expected) * (c - expected) / expected;
    CHECK(chi_sq < 24.322);  // df = 7 critical value at p = 0.001
}

TEST_CASE("tree-edge directions are marginally uniform") {
    SplitRng rng(1717, 0);
    const graphs::LabeledTree path3{3, {{1, 2}, {2, 3}}};
    std::array<int, 8> counts{};
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const TreeConfiguration cfg = sample_tree_surface(path3, 3, 1.0, rng);
        const int octant = (cfg.positions[1][0] > 0 ? 1 : 0) +
                           (cfg.positions[1][1] > 0 ? 2 : 0) +
                           (cfg.positions[1][2] > 0 ? 4 : 0);
        ++counts[static_cast<std::size_t>(octant)];
    }
    const double expected = n / 8.0;
    double chi_sq = 0.0;
    for (int c : counts) chi_sq += (c - expected) * (c - expected) / expected;
    CHECK(chi_sq < 24.322);
}

TEST_CASE("tree surface sampling") {
    SplitRng rng(17, 3);
    const auto trees = graphs::enumerate_trees(4);
    SECTION("every tree edge has length R to rounding") {
        for (const auto& tree : trees) {
            const TreeConfiguration cfg = sample_tree_surface(tree, 3, 0.8, rng);
            for (const auto& [a, b] : tree.edges) {
                const double dist = std::sqrt(squared_distance(
                    cfg.positions[static_cast<std::size_t>(a - 1)],
                    cfg.positions[static_cast<std::size_t>(b - 1)], 3));
                CHECK(std::abs(dist - 0.8) < 1e-12);
            }
            for (int i = 0; i < 3; ++i) CHECK(cfg.positions[0][static_cast<std::size_t>(i)] == 0.0);
        }
    }
    SECTION("weight is the sphere area to the number of edges") {
        const graphs::LabeledTree pair{2, {{1, 2}}};
        const double pi = std::numbers::pi;
        CHECK(std::abs(sample_tree_surface(pair, 3, 1.0, rng).weight - 4.0 * pi) < 1e-12);
        CHECK(std::abs(sample_tree_surface(pair, 2, 1.0, rng).weight - 2.0 * pi) < 1e-12);
        const graphs::LabeledTree path3{3, {{1, 2}, {2, 3}}};
        CHECK(std::abs(sample_tree_surface(path3, 3, 1.0, rng).weight - 16.0 * pi * pi) <
              1e-10);
    }
    SECTION("one-dimensional chains are unsupported") {
        CHECK_THROWS_AS(sample_tree_surface(trees[0], 1, 1.0, rng),
                        polygas::unsupported_operation);
    }
}

TEST_CASE("sphere surface areas") {
    const double pi = std::numbers::pi;
    CHECK(std::abs(sphere_surface_area(2, 1.0) - 2.0 * pi) < 1e-14);
    CHECK(std::abs(sphere_surface_area(3, 1.0) - 4.0 * pi) < 1e-14);
    CHECK(std::abs(sphere_surface_area(3, 2.0) - 16.0 * pi) < 1e-13);
}
