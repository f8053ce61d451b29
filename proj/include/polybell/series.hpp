#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "polybell/errors.hpp"
#include "polybell/polynomial.hpp"

namespace polybell {

// Formal power series in t truncated at a fixed order N. Coefficients are
// polynomials in x, so generating functions of polynomial families need no
// second code path; scalar series embed as degree-0 coefficients.
//
// Binary operations truncate to the smaller of the two orders.
class series {
public:
    explicit series(int order) : order_(checked(order)), coeffs_(static_cast<std::size_t>(order) + 1) {}
    series(int order, std::vector<polynomial> cs) : order_(checked(order)), coeffs_(std::move(cs)) {
        if (coeffs_.size() > static_cast<std::size_t>(order_) + 1)
            throw std::invalid_argument("more coefficients than the series order admits");
        coeffs_.resize(static_cast<std::size_t>(order_) + 1);
    }

    static series one(int order) {
        series s(order);
        s.coeffs_[0] = polynomial(1);
        return s;
    }
    static series t(int order) {
        series s(order);
        if (order >= 1) s.coeffs_[1] = polynomial(1);
        return s;
    }
    static series constant(const polynomial& c, int order) {
        series s(order);
        s.coeffs_[0] = c;
        return s;
    }

    int order() const { return order_; }

    const polynomial& coeff(int n) const {
        if (n < 0 || n > order_) throw order_exceeded(n, order_);
        return coeffs_[static_cast<std::size_t>(n)];
    }
    void set_coeff(int n, polynomial p) {
        if (n < 0 || n > order_) throw order_exceeded(n, order_);
        coeffs_[static_cast<std::size_t>(n)] = std::move(p);
    }

    // n! * [t^n]; the EGF coefficient used throughout.
    polynomial egf_coeff(int n) const {
        const polynomial& c = coeff(n); // bounds-checked first
        return c * rational(factorial(n));
    }

    bool has_zero_constant_term() const { return coeffs_[0].is_zero(); }
    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(),
                           [](const polynomial& p) { return p.is_zero(); });
    }

    series truncated(int new_order) const {
        if (new_order >= order_) return *this;
        series s(new_order);
        for (int n = 0; n <= new_order; ++n) s.coeffs_[static_cast<std::size_t>(n)] = coeffs_[static_cast<std::size_t>(n)];
        return s;
    }

    series& operator+=(const polynomial& c) {
        coeffs_[0] += c;
        return *this;
    }
    series& operator-=(const polynomial& c) {
        coeffs_[0] -= c;
        return *this;
    }
    series& operator*=(const rational& c) {
        for (auto& p : coeffs_) p *= c;
        return *this;
    }
    series& operator*=(const polynomial& c) {
        for (auto& p : coeffs_) p = p * c;
        return *this;
    }

    friend series operator+(const series& a, const series& b) {
        series r(std::min(a.order_, b.order_));
        for (int n = 0; n <= r.order_; ++n) r.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
        return r;
    }
    friend series operator-(const series& a, const series& b) {
        series r(std::min(a.order_, b.order_));
        for (int n = 0; n <= r.order_; ++n) r.coeffs_[n] = a.coeffs_[n] - b.coeffs_[n];
        return r;
    }
    friend series operator+(series a, const polynomial& c) { return a += c; }
    friend series operator-(series a, const polynomial& c) { return a -= c; }
    friend series operator*(series a, const rational& c) { return a *= c; }
    friend series operator*(const rational& c, series a) { return a *= c; }
    friend series operator*(series a, const polynomial& c) { return a *= c; }
    friend series operator*(const polynomial& c, series a) { return a *= c; }

    // Exact Cauchy product truncated at the smaller order.
    friend series operator*(const series& a, const series& b) {
        series r(std::min(a.order_, b.order_));
        for (int i = 0; i <= r.order_; ++i) {
            if (a.coeffs_[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; i + j <= r.order_; ++j) {
                if (b.coeffs_[static_cast<std::size_t>(j)].is_zero()) continue;
                r.coeffs_[static_cast<std::size_t>(i + j)] +=
                    a.coeffs_[static_cast<std::size_t>(i)] * b.coeffs_[static_cast<std::size_t>(j)];
            }
        }
        return r;
    }

    friend bool operator==(const series& a, const series& b) {
        return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const series& a, const series& b) { return !(a == b); }

private:
    static int checked(int order) {
        if (order < 0) throw negative_index("series order must be non-negative");
        return order;
    }

    int order_;
    std::vector<polynomial> coeffs_;
};

// a^m by repeated squaring at a's order.
inline series pow(const series& a, int m) {
    if (m < 0) throw negative_index("series power must be non-negative");
    series acc = series::one(a.order());
    series base = a;
    while (m > 0) {
        if (m & 1) acc = acc * base;
        m >>= 1;
        if (m > 0) base = base * base;
    }
    return acc;
}

namespace detail {

// Horner accumulation of sum_m outer[m] * inner^m, truncated at inner's
// order. Only powers up to the order can contribute because inner has no
// constant term.
inline series compose_impl(std::span<const polynomial> outer, const series& inner) {
    if (!inner.has_zero_constant_term()) throw nonzero_constant_term();
    const int n = inner.order();
    const int top = std::min(static_cast<int>(outer.size()) - 1, n);
    if (top < 0) return series(n);
    series acc = series::constant(outer[static_cast<std::size_t>(top)], n);
    for (int m = top - 1; m >= 0; --m) {
        acc = acc * inner;
        acc += outer[static_cast<std::size_t>(m)];
    }
    return acc;
}

} // namespace detail

// Composition with an explicit scalar coefficient sequence c_0, c_1, ...
inline series compose(const std::vector<rational>& outer, const series& inner) {
    std::vector<polynomial> cs(outer.begin(), outer.end());
    return detail::compose_impl(cs, inner);
}

// Composition where the outer coefficient sequence is read off another
// series ([s^m]-coefficients); truncates to the smaller order.
inline series compose(const series& outer, const series& inner) {
    const int n = std::min(outer.order(), inner.order());
    std::vector<polynomial> cs;
    cs.reserve(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) cs.push_back(outer.coeff(m));
    return detail::compose_impl(cs, inner.truncated(n));
}

// exp(a) for a with zero constant term.
inline series exp(const series& a) {
    std::vector<rational> outer(static_cast<std::size_t>(a.order()) + 1);
    rational inv_fact = 1;
    for (int m = 0; m <= a.order(); ++m) {
        if (m > 0) inv_fact /= m;
        outer[static_cast<std::size_t>(m)] = inv_fact;
    }
    return compose(outer, a);
}

// log(1 + scale * t) truncated at the given order.
inline series log1p_series(const rational& scale, int order) {
    series s(order);
    rational p = 1;
    for (int n = 1; n <= order; ++n) {
        p *= scale;
        rational c = p / n;
        s.set_coeff(n, polynomial((n % 2 == 0) ? -c : c));
    }
    return s;
}

// 1 / (1 - u) for u with zero constant term.
inline series geom(const series& u) {
    std::vector<rational> outer(static_cast<std::size_t>(u.order()) + 1, rational(1));
    return compose(outer, u);
}

} // namespace polybell
