#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "polybell/combinatorics.hpp"

namespace polybell {

// Random variables with exact rational raw moments of every order; nothing
// here samples or approximates.
struct point_mass {
    rational c;
};
struct bernoulli {
    rational p; // 0 <= p <= 1
};
struct poisson {
    rational alpha; // alpha > 0
};
struct gamma_dist {
    rational alpha; // alpha > 0
    rational beta;  // beta > 0
};
struct finite_discrete {
    std::vector<std::pair<rational, rational>> atoms; // (value, probability)
};

using distribution = std::variant<point_mass, bernoulli, poisson, gamma_dist, finite_discrete>;

inline void validate(const distribution& y) {
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, bernoulli>) {
                if (d.p < 0 || d.p > 1) throw std::invalid_argument("bernoulli needs 0 <= p <= 1");
            } else if constexpr (std::is_same_v<T, poisson>) {
                if (d.alpha <= 0) throw std::invalid_argument("poisson needs alpha > 0");
            } else if constexpr (std::is_same_v<T, gamma_dist>) {
                if (d.alpha <= 0 || d.beta <= 0)
                    throw std::invalid_argument("gamma needs alpha > 0 and beta > 0");
            } else if constexpr (std::is_same_v<T, finite_discrete>) {
                if (d.atoms.empty()) throw std::invalid_argument("discrete needs at least one atom");
                rational total = 0;
                for (const auto& [value, prob] : d.atoms) {
                    (void)value;
                    if (prob <= 0) throw std::invalid_argument("discrete probabilities must be positive");
                    total += prob;
                }
                if (total != 1) throw std::invalid_argument("discrete probabilities must sum to 1");
            }
        },
        y);
}

// Canonical text form, also the CLI syntax: "point:c", "bernoulli:p",
// "poisson:a", "gamma:a,b", "discrete:v1:p1,v2:p2,...".
inline std::string to_string(const distribution& y) {
    return std::visit(
        [](const auto& d) -> std::string {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, point_mass>) {
                return "point:" + to_string(d.c);
            } else if constexpr (std::is_same_v<T, bernoulli>) {
                return "bernoulli:" + to_string(d.p);
            } else if constexpr (std::is_same_v<T, poisson>) {
                return "poisson:" + to_string(d.alpha);
            } else if constexpr (std::is_same_v<T, gamma_dist>) {
                return "gamma:" + to_string(d.alpha) + "," + to_string(d.beta);
            } else {
                std::string s = "discrete:";
                bool first = true;
                for (const auto& [value, prob] : d.atoms) {
                    if (!first) s += ",";
                    first = false;
                    s += to_string(value) + ":" + to_string(prob);
                }
                return s;
            }
        },
        y);
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = text.find(sep, begin);
        if (end == std::string_view::npos) {
            parts.push_back(text.substr(begin));
            return parts;
        }
        parts.push_back(text.substr(begin, end - begin));
        begin = end + 1;
    }
}

} // namespace detail

inline distribution parse_distribution(std::string_view text) {
    const auto fail = [&]() -> distribution {
        throw std::invalid_argument("malformed distribution: \"" + std::string(text) + "\"");
    };
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) return fail();
    const std::string_view family = text.substr(0, colon);
    const std::string_view args = text.substr(colon + 1);
    distribution y;
    if (family == "point") {
        y = point_mass{parse_rational(args)};
    } else if (family == "bernoulli") {
        y = bernoulli{parse_rational(args)};
    } else if (family == "poisson") {
        y = poisson{parse_rational(args)};
    } else if (family == "gamma") {
        const auto parts = detail::split(args, ',');
        if (parts.size() != 2) return fail();
        y = gamma_dist{parse_rational(parts[0]), parse_rational(parts[1])};
    } else if (family == "discrete") {
        finite_discrete d;
        for (const auto part : detail::split(args, ',')) {
            const auto pair = detail::split(part, ':');
            if (pair.size() != 2) return fail();
            d.atoms.emplace_back(parse_rational(pair[0]), parse_rational(pair[1]));
        }
        y = std::move(d);
    } else {
        return fail();
    }
    validate(y);
    return y;
}

// E[Y^n], exact for every supported family: c^n, p (n >= 1), phi_n(alpha)
// by Touchard evaluation, (alpha+n-1)_n / beta^n, or the atom sum.
inline rational raw_moment(const distribution& y, int n) {
    if (n < 0) throw negative_index("moment order must be non-negative");
    if (n == 0) return 1;
    return std::visit(
        [n](const auto& d) -> rational {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, point_mass>) {
                return pow_rational(d.c, n);
            } else if constexpr (std::is_same_v<T, bernoulli>) {
                return d.p;
            } else if constexpr (std::is_same_v<T, poisson>) {
                return bell_poly(n).eval(d.alpha);
            } else if constexpr (std::is_same_v<T, gamma_dist>) {
                rational rising = 1;
                for (int i = 0; i < n; ++i) rising *= d.alpha + i;
                return rising / pow_rational(d.beta, n);
            } else {
                rational sum = 0;
                for (const auto& [value, prob] : d.atoms) sum += prob * pow_rational(value, n);
                return sum;
            }
        },
        y);
}

// The moment sequence E[Y^0], ..., E[Y^n_max] as one list.
inline std::vector<rational> raw_moments(const distribution& y, int n_max) {
    if (n_max < 0) throw negative_index("moment order must be non-negative");
    std::vector<rational> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(raw_moment(y, n));
    return out;
}

// E[(Y)_{n,lambda}] through the basis change
// (x)_{n,lambda} = sum_k lambda^{n-k} S1(n,k) x^k applied inside E[.].
inline rational deg_moment(const distribution& y, int n, const rational& lambda) {
    if (n < 0) throw negative_index("moment order must be non-negative");
    const stirling_triangle& s1 = stirling_table(stirling_kind::classical_first, 0, n);
    rational sum = 0;
    for (int k = 0; k <= n; ++k) {
        const rational& coeff = s1.value(n, k);
        if (coeff == 0) continue;
        sum += pow_rational(lambda, n - k) * coeff * raw_moment(y, k);
    }
    return sum;
}

// E[e_lambda^Y(t)] from the generic moment pipeline:
// [t^n] = E[(Y)_{n,lambda}] / n!. Memoized per (Y, lambda, order).
inline series deg_mgf_series(const distribution& y, const rational& lambda, int order) {
    using key_t = std::tuple<std::string, std::string, int>;
    static std::mutex mu;
    static std::map<key_t, series> cache;
    const key_t key{to_string(y), lambda.str(), order};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    series s(order);
    rational inv_fact = 1;
    for (int n = 0; n <= order; ++n) {
        if (n > 0) inv_fact /= n;
        s.set_coeff(n, polynomial(deg_moment(y, n, lambda) * inv_fact));
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(s)).first->second;
}

// Closed-form construction of the same series where the family provides one:
//   point mass c      -> e_lambda^c(t)
//   bernoulli p       -> 1 + p (e_lambda(t) - 1)
//   poisson alpha     -> exp(alpha (e_lambda(t) - 1))
//   gamma(1,1)        -> 1 / (1 - log(1+lambda t)/lambda), classical 1/(1-t)
//                        at lambda = 0; other gamma parameters have none
//   finite discrete   -> sum of p_i e_lambda^{v_i}(t)
// The generic pipeline above must agree wherever this is defined; both are
// exposed so that agreement stays a testable property.
inline std::optional<series> deg_mgf_series_closed(const distribution& y, const rational& lambda,
                                                   int order) {
    return std::visit(
        [&](const auto& d) -> std::optional<series> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, point_mass>) {
                return deg_exp_series(d.c, lambda, order);
            } else if constexpr (std::is_same_v<T, bernoulli>) {
                const series e = deg_exp_series(rational(1), lambda, order) - polynomial(1);
                return e * d.p + polynomial(1);
            } else if constexpr (std::is_same_v<T, poisson>) {
                const series e = deg_exp_series(rational(1), lambda, order) - polynomial(1);
                return exp(e * d.alpha);
            } else if constexpr (std::is_same_v<T, gamma_dist>) {
                if (d.alpha != 1 || d.beta != 1) return std::nullopt;
                if (lambda == 0) return geom(series::t(order));
                return geom(log1p_series(lambda, order) * (rational(1) / lambda));
            } else {
                series sum(order);
                for (const auto& [value, prob] : d.atoms)
                    sum = sum + deg_exp_series(value, lambda, order) * prob;
                return sum;
            }
        },
        y);
}

namespace detail {

// Triangle of probabilistic degenerate Stirling numbers {n k}_{Y,lambda}:
// n! [t^n] (E[e_lambda^Y(t)] - 1)^k / k!. Memoized like stirling_table.
inline const std::vector<std::vector<rational>>& prob_deg_stirling_rows(const distribution& y,
                                                                        const rational& lambda,
                                                                        int n_max) {
    using key_t = std::tuple<std::string, std::string, int>;
    static std::mutex mu;
    static std::map<key_t, std::unique_ptr<const std::vector<std::vector<rational>>>> cache;
    const key_t key{to_string(y), lambda.str(), n_max};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const series base = deg_mgf_series(y, lambda, n_max) - polynomial(1);
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
        it = cache
                 .emplace(key, std::make_unique<const std::vector<std::vector<rational>>>(
                                   std::move(values)))
                 .first;
    }
    return *it->second;
}

} // namespace detail

// {n k}_{Y,lambda}
inline rational prob_deg_stirling2(const distribution& y, const rational& lambda, int n, int k) {
    if (n < 0 || k < 0 || k > n) throw index_out_of_triangle(n, k);
    return detail::prob_deg_stirling_rows(y, lambda, n)[static_cast<std::size_t>(n)]
                                                       [static_cast<std::size_t>(k)];
}

// {n k}_Y, the lambda = 0 instance.
inline rational prob_stirling2(const distribution& y, int n, int k) {
    return prob_deg_stirling2(y, 0, n, k);
}

// E[(S_m)_{n,lambda}] where S_m = Y_1 + ... + Y_m: n! [t^n] E[e_lambda^Y(t)]^m.
// S_0 = 0 gives the constant series 1.
inline rational sm_deg_moment(const distribution& y, const rational& lambda, int m, int n) {
    if (m < 0) throw negative_index("number of summands must be non-negative");
    if (n < 0) throw negative_index("moment order must be non-negative");
    const series mgf = deg_mgf_series(y, lambda, n);
    return pow(mgf, m).egf_coeff(n).constant_value();
}

// Independent route for {n k}_Y: the finite-difference form
// (1/k!) sum_j C(k,j) (-1)^{k-j} E[S_j^n].
inline rational prob_stirling2_by_differences(const distribution& y, int n, int k) {
    if (n < 0 || k < 0 || k > n) throw index_out_of_triangle(n, k);
    rational sum = 0;
    for (int j = 0; j <= k; ++j) {
        const rational term = rational(binomial(k, j)) * sm_deg_moment(y, 0, j, n);
        sum += ((k - j) % 2 == 0) ? term : -term;
    }
    return sum / rational(factorial(k));
}

// phi_{n,lambda}^Y(x) = n! [t^n] e^{x (E[e_lambda^Y(t)] - 1)}
//                     = sum_k {n k}_{Y,lambda} x^k.
inline std::vector<polynomial> prob_deg_bell_all(const distribution& y, const rational& lambda,
                                                 int n_max) {
    const series u = (deg_mgf_series(y, lambda, n_max) - polynomial(1)) * polynomial::x();
    const series e = exp(u);
    std::vector<polynomial> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) out.push_back(e.egf_coeff(n));
    return out;
}

inline polynomial prob_deg_bell(const distribution& y, const rational& lambda, int n) {
    if (n < 0) throw negative_index("Bell polynomial index must be non-negative");
    return prob_deg_bell_all(y, lambda, n).back();
}

} // namespace polybell
