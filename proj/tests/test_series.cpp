#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "polygas/rng.hpp"
#include "polygas/series.hpp"

using namespace polygas::series;
using Rat = Rational;
using Series = TruncatedSeries<Rational>;

namespace {

Series random_series(polygas::SplitRng& rng, int order, bool zero_constant = false) {
    Series s(order);
    for (int k = zero_constant ? 1 : 0; k <= order; ++k) {
        const int num = static_cast<int>(rng.next_u64() % 19) - 9;
        const int den = 1 + static_cast<int>(rng.next_u64() % 9);
        s[k] = Rat(num, den);
    }
    return s;
}

}  // namespace

TEST_CASE("log1p coefficients") {
    const Series s = log1p_series(3);
    CHECK(s[0] == Rat(0));
    CHECK(s[1] == Rat(1));
    CHECK(s[2] == Rat(-1, 2));
    CHECK(s[3] == Rat(1, 3));
    CHECK(log1p_series(1)[1] == Rat(1));
    CHECK_THROWS_AS(log1p_series(0), std::invalid_argument);
}

TEST_CASE("exp composed with log1p is 1 + z") {
    const Series composed = compose(exp_series(6), log1p_series(6));
    CHECK(composed[0] == Rat(1));
    CHECK(composed[1] == Rat(1));
    for (int k = 2; k <= 6; ++k) CHECK(composed[k] == Rat(0));
}

TEST_CASE("compose basics") {
    polygas::SplitRng rng(7, 0);
    const Series f = random_series(rng, 6);
    SECTION("composition with the identity") {
        const Series composed = compose(f, identity_series<Rational>(6));
        for (int k = 0; k <= 6; ++k) CHECK(composed[k] == f[k]);
    }
    SECTION("log(1 + a z) has coefficients (-1)^(k-1) a^k / k") {
        const Rat a(3, 2);
        Series az(5);
        az[1] = a;
        const Series composed = compose(log1p_series(5), az);
        Rat pow = a;
        for (int k = 1; k <= 5; ++k) {
            Rat expect = pow / k;
            if (k % 2 == 0) expect = -expect;
            CHECK(composed[k] == expect);
            pow *= a;
        }
    }
    SECTION("nonzero inner constant term is rejected") {
        Series bad(3);
        bad[0] = Rat(1);
        CHECK_THROWS_AS(compose(f, bad), std::invalid_argument);
    }
}

TEST_CASE("reversion of z e^z gives the principal-branch series") {
    const Series w = revert(z_exp_z_series(4));
    CHECK(w[0] == Rat(0));
    CHECK(w[1] == Rat(1));
    CHECK(w[2] == Rat(-1));
    CHECK(w[3] == Rat(3, 2));
    CHECK(w[4] == Rat(-8, 3));

    SECTION("back substitution: w(z) e^{w(z)} = z order by order") {
        // w e^w = w * sum w^k/k!: compose exp with w, multiply by w.
        const Series w8 = revert(z_exp_z_series(8));
        const Series check = multiply(w8, compose(exp_series(8), w8));
        CHECK(check[0] == Rat(0));
        CHECK(check[1] == Rat(1));
        for (int k = 2; k <= 8; ++k) CHECK(check[k] == Rat(0));
    }
}

TEST_CASE("reversion properties") {
    SECTION("revert(identity) = identity") {
        const Series id = identity_series<Rational>(5);
        const Series r = revert(id);
        for (int k = 0; k <= 5; ++k) CHECK(r[k] == id[k]);
    }
    SECTION("double reversion returns the series") {
        Series s(5);
        s[1] = Rat(1);
        s[2] = Rat(1);
        const Series back = revert(revert(s));
        for (int k = 0; k <= 5; ++k) CHECK(back[k] == s[k]);
    }
    SECTION("revert composed with the series is the identity") {
        polygas::SplitRng rng(99, 1);
        for (int trial = 0; trial < 20; ++trial) {
            Series s = random_series(rng, 6, true);
            if (s[1] == Rat(0)) s[1] = Rat(1, 2);
            const Series composed = compose(s, revert(s));
            for (int k = 0; k <= 6; ++k) CHECK(composed[k] == identity_series<Rational>(6)[k]);
        }
    }
    SECTION("vanishing linear term is singular") {
        Series s(4);
        s[2] = Rat(1);
        CHECK_THROWS_AS(revert(s), polygas::singular_series_error);
        Series c(4);
        c[0] = Rat(1);
        CHECK_THROWS_AS(revert(c), std::invalid_argument);
    }
}

TEST_CASE("ring operations") {
    SECTION("scale_argument flips signs of odd coefficients") {
        Series s(2);
        s[1] = Rat(1);
        s[2] = Rat(1);
        const Series flipped = scale_argument(s, Rat(-1));
        CHECK(flipped[1] == Rat(-1));
        CHECK(flipped[2] == Rat(1));
    }
    SECTION("(1+z)(1-z) = 1 - z^2") {
        Series a(2), b(2);
        a[0] = Rat(1);
        a[1] = Rat(1);
        b[0] = Rat(1);
        b[1] = Rat(-1);
        const Series p = multiply(a, b);
        CHECK(p[0] == Rat(1));
        CHECK(p[1] == Rat(0));
        CHECK(p[2] == Rat(-1));
    }
    SECTION("(1+z) log(1+z) matches the hand expansion to order 3") {
        Series one_plus(3);
        one_plus[0] = Rat(1);
        one_plus[1] = Rat(1);
        const Series p = multiply(one_plus, log1p_series(3));
        CHECK(p[0] == Rat(0));
        CHECK(p[1] == Rat(1));
        CHECK(p[2] == Rat(1, 2));
        CHECK(p[3] == Rat(-1, 6));
    }
}

TEST_CASE("ring axioms on random rational series") {
    polygas::SplitRng rng(2024, 0);
    for (int trial = 0; trial < 25; ++trial) {
        const Series a = random_series(rng, 8);
        const Series b = random_series(rng, 8);
        const Series c = random_series(rng, 8);
        const Series ab_c = multiply(multiply(a, b), c);
        const Series a_bc = multiply(a, multiply(b, c));
        const Series distro_l = multiply(a, add(b, c));
        const Series distro_r = add(multiply(a, b), multiply(a, c));
        for (int k = 0; k <= 8; ++k) {
            CHECK(ab_c[k] == a_bc[k]);
            CHECK(distro_l[k] == distro_r[k]);
        }
    }
}

TEST_CASE("rational mode reproduces float mode") {
    polygas::SplitRng rng(555, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const Series a = random_series(rng, 8);
        const Series b = random_series(rng, 8);
        const auto exact = to_double(multiply(a, b));
        const auto approx = polygas::series::multiply(to_double(a), to_double(b));
        for (int k = 0; k <= 8; ++k) CHECK(std::abs(exact[k] - approx[k]) < 1e-12);
    }
}
