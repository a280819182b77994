#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polygas/forest_root.hpp"
#include "polygas/graphs.hpp"

using namespace polygas::forest_root;

TEST_CASE("left-hand side evaluates the test function at the origin") {
    CHECK(lhs(make_test_function(1, 0.5)) == 1.0);
    CHECK(lhs(make_test_function(1, 0.5, 0.7)) == 0.7);
    CHECK(lhs(make_test_function_with_pair(2, 0.5, 0.5, 0.5)) == 0.5);
    CHECK(lhs(make_test_function_with_pair(3, 0.5, 0.5, 0.5)) == 0.125);  // three pair factors
}

TEST_CASE("the rooted-forest term count is (n+1)^(n-1)") {
    CHECK(polygas::graphs::enumerate_rooted_forests(1).size() == 1);
    CHECK(polygas::graphs::enumerate_rooted_forests(2).size() == 3);
    CHECK(polygas::graphs::enumerate_rooted_forests(3).size() == 16);
    CHECK(polygas::graphs::enumerate_rooted_forests(4).size() == 125);
}

TEST_CASE("identity for a single point by radial quadrature") {
    const auto rep =
        check_identity(make_test_function(1, 0.5), Method::quad, {1e-10, 0, 0}, 1e-8);
    CHECK(rep.lhs_value == 1.0);
    CHECK(rep.abs_error < 1e-8);
    CHECK(rep.pass);
    CHECK_FALSE(rep.stochastic);

    const auto scaled =
        check_identity(make_test_function(1, 0.3, 0.7), Method::quad, {1e-10, 0, 0}, 1e-8);
    CHECK(std::abs(scaled.rhs_value - 0.7) < 1e-8);
}

TEST_CASE("identity for two points") {
    SECTION("no pair dependence factorizes to the single-point case squared") {
        const auto rep = check_identity(make_test_function(2, 0.5), Method::quad, {1e-7, 0, 0},
                                        1e-6);
        CHECK(std::abs(rep.rhs_value - 1.0) < 1e-6);
        CHECK(rep.pass);
    }
    SECTION("with a quintic pair factor the sum gives u(0)") {
        const auto rep = check_identity(make_test_function_with_pair(2, 0.5, 0.5, 0.5),
                                        Method::quad, {1e-7, 0, 0}, 1e-6);
        CHECK(rep.lhs_value == 0.5);
        CHECK(rep.abs_error < 1e-6);
        CHECK(rep.pass);
    }
}

TEST_CASE("identity for three points by monte carlo") {
    const auto f = make_test_function_with_pair(3, 0.5, 0.5, 0.5);
    const auto rep = check_identity(f, Method::mc, {0.0, 200000, 5}, 0.0);
    CHECK(rep.stochastic);
    CHECK(rep.rhs_stderr > 0.0);
    CHECK(rep.abs_error <= 3.0 * rep.rhs_stderr);
    CHECK(rep.pass);

    SECTION("same seed reproduces the estimate") {
        const auto again = check_identity(f, Method::mc, {0.0, 200000, 5}, 0.0);
        CHECK(again.rhs_value == rep.rhs_value);
        CHECK(again.rhs_stderr == rep.rhs_stderr);
    }
}

TEST_CASE("identity for three points by reduced quadrature at loose tolerance") {
    const auto f = make_test_function_with_pair(3, 0.5, 0.5, 0.5);
    const auto rep = check_identity(f, Method::quad, {2e-2, 0, 0}, 2e-2);
    CHECK(rep.lhs_value == 0.125);
    CHECK(rep.abs_error < 2e-2);
    CHECK(rep.pass);
}

TEST_CASE("rhs dispatcher selects the requested method") {
    const auto f = make_test_function(1, 0.5);
    const RhsValue q = rhs(f, Method::quad, {1e-10, 0, 0});
    CHECK_FALSE(q.stochastic);
    CHECK(std::abs(q.value - 1.0) < 1e-8);
    const RhsValue m = rhs(f, Method::mc, {0.0, 50000, 3});
    CHECK(m.stochastic);
    CHECK(std::abs(m.value - 1.0) <= 3.0 * m.stderr_ + 1e-12);
}

TEST_CASE("argument errors") {
    CHECK_THROWS_AS(make_test_function(0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(rhs_quad(make_test_function(4, 0.5), 1e-3), std::invalid_argument);
    CHECK_THROWS_AS(rhs_mc(make_test_function(5, 0.5), 100, 1), std::invalid_argument);
}
