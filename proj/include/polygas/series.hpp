#pragma once

// Truncated power series in the activity variable. Coefficients are a
// template parameter: boost::multiprecision::cpp_rational for exact
// identity checks (the default for everything combinatorial), double where
// Monte-Carlo values enter. The rational instantiation never silently
// converts to floating point; use to_double() explicitly.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

#include "polygas/errors.hpp"

namespace polygas::series {

using Rational = boost::multiprecision::cpp_rational;

template <class Coeff>
class TruncatedSeries {
public:
    TruncatedSeries() : coeffs_(1, Coeff(0)) {}
    explicit TruncatedSeries(int order) : coeffs_(static_cast<std::size_t>(order) + 1, Coeff(0)) {
        if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
    }
    explicit TruncatedSeries(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: empty coefficient list");
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const Coeff& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    Coeff& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
    const std::vector<Coeff>& coefficients() const { return coeffs_; }

    TruncatedSeries truncated(int new_order) const {
        TruncatedSeries out(new_order);
        for (int k = 0; k <= new_order && k <= order(); ++k) out[k] = coeffs_[k];
        return out;
    }

private:
    std::vector<Coeff> coeffs_;
};

template <class Coeff>
TruncatedSeries<Coeff> add(const TruncatedSeries<Coeff>& a, const TruncatedSeries<Coeff>& b) {
    const int n = std::min(a.order(), b.order());
    TruncatedSeries<Coeff> out(n);
    for (int k = 0; k <= n; ++k) out[k] = a[k] + b[k];
    return out;
}

// Cauchy product truncated at the shared order.
template <class Coeff>
TruncatedSeries<Coeff> multiply(const TruncatedSeries<Coeff>& a, const TruncatedSeries<Coeff>& b) {
    const int n = std::min(a.order(), b.order());
    TruncatedSeries<Coeff> out(n);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; i + j <= n && j <= b.order(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

template <class Coeff>
TruncatedSeries<Coeff> scale_value(const TruncatedSeries<Coeff>& s, const Coeff& a) {
    TruncatedSeries<Coeff> out(s.order());
    for (int k = 0; k <= s.order(); ++k) out[k] = a * s[k];
    return out;
}

// c_k -> a^k c_k, i.e. s(a z).
template <class Coeff>
TruncatedSeries<Coeff> scale_argument(const TruncatedSeries<Coeff>& s, const Coeff& a) {
    TruncatedSeries<Coeff> out(s.order());
    Coeff pow(1);
    for (int k = 0; k <= s.order(); ++k) {
        out[k] = pow * s[k];
        pow *= a;
    }
    return out;
}

// outer(inner(z)) through the shared order; inner must have no constant term.
template <class Coeff>
TruncatedSeries<Coeff> compose(const TruncatedSeries<Coeff>& outer,
                               const TruncatedSeries<Coeff>& inner) {
    if (inner[0] != Coeff(0))
        throw std::invalid_argument("compose: inner series must have zero constant term");
    const int n = std::min(outer.order(), inner.order());
    const TruncatedSeries<Coeff> in = inner.truncated(n);
    TruncatedSeries<Coeff> out(n);
    out[0] = outer[n];
    for (int j = n - 1; j >= 0; --j) {  // Horner
        out = multiply(out, in);
        out[0] += outer[j];
    }
    return out;
}

template <class Coeff>
TruncatedSeries<Coeff> identity_series(int order) {
    TruncatedSeries<Coeff> s(order);
    if (order >= 1) s[1] = Coeff(1);
    return s;
}

// Compositional inverse: t with s(t(z)) = z through the shared order.
template <class Coeff>
TruncatedSeries<Coeff> revert(const TruncatedSeries<Coeff>& s) {
    if (s[0] != Coeff(0)) throw std::invalid_argument("revert: series must have zero constant term");
    if (s.order() < 1 || s[1] == Coeff(0))
        throw singular_series_error("revert: vanishing linear coefficient");
    const int n = s.order();
    TruncatedSeries<Coeff> t(n);
    t[1] = Coeff(1) / s[1];
    for (int k = 2; k <= n; ++k) {
        // Coefficient of z^k in s(t(z)) with t_k still zero; solve for t_k.
        const TruncatedSeries<Coeff> comp = compose(s.truncated(k), t.truncated(k));
        t[k] = -comp[k] / s[1];
    }
    return t;
}

// log(1+z) = z - z^2/2 + z^3/3 - ...
inline TruncatedSeries<Rational> log1p_series(int order) {
    if (order < 1) throw std::invalid_argument("log1p_series: order must be >= 1");
    TruncatedSeries<Rational> s(order);
    for (int k = 1; k <= order; ++k) {
        s[k] = Rational(1, k);
        if (k % 2 == 0) s[k] = -s[k];
    }
    return s;
}

inline TruncatedSeries<Rational> exp_series(int order) {
    TruncatedSeries<Rational> s(order);
    Rational fact(1);
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        s[k] = Rational(1) / fact;
    }
    return s;
}

// z e^z, whose compositional inverse is the principal branch of s e^s = z.
inline TruncatedSeries<Rational> z_exp_z_series(int order) {
    TruncatedSeries<Rational> s(order);
    Rational fact(1);
    for (int k = 1; k <= order; ++k) {
        if (k > 1) fact *= (k - 1);
        s[k] = Rational(1) / fact;
    }
    return s;
}

inline TruncatedSeries<double> to_double(const TruncatedSeries<Rational>& s) {
    TruncatedSeries<double> out(s.order());
    for (int k = 0; k <= s.order(); ++k) out[k] = s[k].convert_to<double>();
    return out;
}

}  // namespace polygas::series
