#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "polybell/series.hpp"

namespace polybell {

// (x)_n = x (x-1) ... (x-n+1), with (x)_0 = 1.
inline rational falling_factorial(const rational& x, int n) {
    if (n < 0) throw negative_index("falling factorial index must be non-negative");
    rational r = 1;
    for (int i = 0; i < n; ++i) r *= x - i;
    return r;
}

inline polynomial falling_factorial(const polynomial& x, int n) {
    if (n < 0) throw negative_index("falling factorial index must be non-negative");
    polynomial r(1);
    for (int i = 0; i < n; ++i) r = r * (x - polynomial(i));
    return r;
}

// (x)_{n,lambda} = x (x-lambda) ... (x-(n-1)lambda); x^n at lambda = 0 and
// the ordinary falling factorial at lambda = 1.
inline rational deg_falling(const rational& x, int n, const rational& lambda) {
    if (n < 0) throw negative_index("degenerate falling factorial index must be non-negative");
    rational r = 1;
    for (int i = 0; i < n; ++i) r *= x - i * lambda;
    return r;
}

inline polynomial deg_falling(const polynomial& x, int n, const rational& lambda) {
    if (n < 0) throw negative_index("degenerate falling factorial index must be non-negative");
    polynomial r(1);
    for (int i = 0; i < n; ++i) r = r * (x - polynomial(i * lambda));
    return r;
}

// e_lambda^x(t) = sum_n (x)_{n,lambda} t^n / n!; equals exp(x t) at lambda = 0.
inline series deg_exp_series(const polynomial& x, const rational& lambda, int order) {
    series s(order);
    polynomial prod(1);
    rational inv_fact = 1;
    s.set_coeff(0, prod);
    for (int n = 1; n <= order; ++n) {
        prod = prod * (x - polynomial((n - 1) * lambda));
        inv_fact /= n;
        s.set_coeff(n, prod * inv_fact);
    }
    return s;
}

inline series deg_exp_series(const rational& x, const rational& lambda, int order) {
    return deg_exp_series(polynomial(x), lambda, order);
}

// log_lambda(1+t) = ((1+t)^lambda - 1) / lambda, expanded through generalized
// binomial coefficients (lambda)_n / n!; the lambda = 0 branch is the
// classical log(1+t).
inline series deg_log_series(const rational& lambda, int order) {
    if (lambda == 0) return log1p_series(1, order);
    series s(order);
    rational prod = 1; // (lambda)_n, built incrementally
    rational inv_fact = 1;
    for (int n = 1; n <= order; ++n) {
        prod *= lambda - (n - 1);
        inv_fact /= n;
        s.set_coeff(n, polynomial(prod * inv_fact / lambda));
    }
    return s;
}

enum class stirling_kind {
    classical_first,
    classical_second,
    degenerate_first,
    degenerate_second,
    lah,
};

inline const char* to_string(stirling_kind kind) {
    switch (kind) {
        case stirling_kind::classical_first: return "stirling1";
        case stirling_kind::classical_second: return "stirling2";
        case stirling_kind::degenerate_first: return "deg-stirling1";
        case stirling_kind::degenerate_second: return "deg-stirling2";
        case stirling_kind::lah: return "lah";
    }
    return "?";
}

inline bool uses_lambda(stirling_kind kind) {
    return kind == stirling_kind::degenerate_first || kind == stirling_kind::degenerate_second;
}

// Triangular table values[n][k], 0 <= k <= n <= n_max.
class stirling_triangle {
public:
    stirling_triangle(stirling_kind kind, rational lambda, std::vector<std::vector<rational>> values)
        : kind_(kind), lambda_(std::move(lambda)), values_(std::move(values)) {}

    stirling_kind kind() const { return kind_; }
    const rational& lambda() const { return lambda_; }
    int n_max() const { return static_cast<int>(values_.size()) - 1; }

    const rational& value(int n, int k) const {
        if (n < 0 || k < 0 || k > n || n > n_max()) throw index_out_of_triangle(n, k);
        return values_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
    }
    const std::vector<rational>& row(int n) const {
        if (n < 0 || n > n_max()) throw index_out_of_triangle(n, 0);
        return values_[static_cast<std::size_t>(n)];
    }

private:
    stirling_kind kind_;
    rational lambda_;
    std::vector<std::vector<rational>> values_;
};

namespace detail {

inline series stirling_base_series(stirling_kind kind, const rational& lambda, int order) {
    switch (kind) {
        case stirling_kind::classical_second:
            return exp(series::t(order)) - polynomial(1);
        case stirling_kind::degenerate_second:
            return deg_exp_series(rational(1), lambda, order) - polynomial(1);
        case stirling_kind::classical_first:
            return log1p_series(1, order);
        case stirling_kind::degenerate_first:
            return deg_log_series(lambda, order);
        case stirling_kind::lah:
            return series::t(order) * geom(series::t(order));
    }
    throw std::logic_error("unreachable");
}

// Extracts the triangle straight from the defining EGFs: row n, column k is
// n! [t^n] base^k / k! with base the series of the kind (e^t - 1,
// e_lambda(t) - 1, log(1+t), log_lambda(1+t), t/(1-t)). No recurrences are
// involved; those become checkable properties instead of trust anchors.
inline stirling_triangle build_stirling_triangle(stirling_kind kind, const rational& lambda, int n_max) {
    const series base = stirling_base_series(kind, lambda, n_max);
    std::vector<std::vector<rational>> values(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        values[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n) + 1, rational(0));
    series pw = series::one(n_max);
    rational inv_kfact = 1;
    for (int k = 0; k <= n_max; ++k) {
        if (k > 0) {
            pw = pw * base;
            inv_kfact /= k;
        }
        for (int n = k; n <= n_max; ++n)
            values[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
                pw.egf_coeff(n).constant_value() * inv_kfact;
    }
    return stirling_triangle(kind, lambda, std::move(values));
}

} // namespace detail

// Memoized per (kind, lambda, n_max); classical and Lah tables ignore lambda.
// The cache is insert-only and guarded, so concurrent readers are safe.
inline const stirling_triangle& stirling_table(stirling_kind kind, const rational& lambda, int n_max) {
    if (n_max < 0) throw negative_index("triangle size must be non-negative");
    const rational lam = uses_lambda(kind) ? lambda : rational(0);
    using key_t = std::tuple<int, std::string, int>;
    static std::mutex mu;
    static std::map<key_t, std::unique_ptr<const stirling_triangle>> cache;
    const key_t key{static_cast<int>(kind), lam.str(), n_max};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto built = std::make_unique<const stirling_triangle>(
            detail::build_stirling_triangle(kind, lam, n_max));
        it = cache.emplace(key, std::move(built)).first;
    }
    return *it->second;
}

// Ei_{k,lambda} applied to u: coefficient sequence c_0 = 0,
// c_m = (1)_{m,lambda} / ((m-1)! m^k). Negative k multiplies by m^{|k|}.
inline series polyexp_apply(int k, const rational& lambda, const series& u) {
    std::vector<rational> outer(static_cast<std::size_t>(u.order()) + 1, rational(0));
    rational one_falling = 1;   // (1)_{m,lambda}
    rational inv_fact = 1;      // 1 / (m-1)!
    for (int m = 1; m <= u.order(); ++m) {
        one_falling *= 1 - (m - 1) * lambda;
        if (m >= 2) inv_fact /= m - 1;
        outer[static_cast<std::size_t>(m)] =
            one_falling * inv_fact * pow_rational(rational(m), -static_cast<long long>(k));
    }
    return compose(outer, u);
}

// phi_n(x) = sum_k {n k} x^k; the triangle row is already the coefficient
// array.
inline polynomial bell_poly(int n) {
    if (n < 0) throw negative_index("Bell polynomial index must be non-negative");
    return polynomial(stirling_table(stirling_kind::classical_second, 0, n).row(n));
}

// phi_{n,lambda}(x) = sum_k {n k}_lambda x^k.
inline polynomial bell_poly(int n, const rational& lambda) {
    if (n < 0) throw negative_index("Bell polynomial index must be non-negative");
    return polynomial(stirling_table(stirling_kind::degenerate_second, lambda, n).row(n));
}

} // namespace polybell
