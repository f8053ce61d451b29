#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "polybell/probabilistic.hpp"

namespace polybell {

// One evaluation request for Bel_{n,lambda}^{(k,Y)}(x). Bel_0 = 1 by
// convention even though the defining composition has no constant term.
struct poly_bell_query {
    distribution dist;
    rational lambda;
    int k = 1;
    int n = 0;
};

// Route 1, closed form: sum_{l=1}^{n} (1)_{l,lambda} / l^{k-1}
// {n l}_{Y,lambda} x^l. All n <= n_max share one triangle build.
inline std::vector<polynomial> bel_closed_all(const distribution& y, const rational& lambda, int k,
                                              int n_max) {
    if (n_max < 0) throw negative_index("degree bound must be non-negative");
    const auto& rows = detail::prob_deg_stirling_rows(y, lambda, n_max);
    std::vector<rational> weight(static_cast<std::size_t>(n_max) + 1, rational(0));
    rational one_falling = 1;
    for (int l = 1; l <= n_max; ++l) {
        one_falling *= 1 - (l - 1) * lambda;
        weight[static_cast<std::size_t>(l)] =
            one_falling * pow_rational(rational(l), 1 - static_cast<long long>(k));
    }
    std::vector<polynomial> out(static_cast<std::size_t>(n_max) + 1);
    out[0] = polynomial(1);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<rational> cs(static_cast<std::size_t>(n) + 1, rational(0));
        for (int l = 1; l <= n; ++l)
            cs[static_cast<std::size_t>(l)] =
                weight[static_cast<std::size_t>(l)] * rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)];
        out[static_cast<std::size_t>(n)] = polynomial(std::move(cs));
    }
    return out;
}

// Route 2, generating function: n! [t^n] Ei_{k,lambda}(x (E[e_lambda^Y(t)]-1)).
// Memoized; this is the definitional route and the costliest one.
inline std::vector<polynomial> bel_gf_all(const distribution& y, const rational& lambda, int k,
                                          int n_max) {
    if (n_max < 0) throw negative_index("degree bound must be non-negative");
    using key_t = std::tuple<std::string, std::string, int, int>;
    static std::mutex mu;
    static std::map<key_t, std::vector<polynomial>> cache;
    const key_t key{to_string(y), lambda.str(), k, n_max};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const series u = (deg_mgf_series(y, lambda, n_max) - polynomial(1)) * polynomial::x();
    const series s = polyexp_apply(k, lambda, u);
    std::vector<polynomial> out(static_cast<std::size_t>(n_max) + 1);
    out[0] = polynomial(1);
    for (int n = 1; n <= n_max; ++n) out[static_cast<std::size_t>(n)] = s.egf_coeff(n);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(out)).first->second;
}

// Route 3, moments of independent sums: coefficient of x^l is
// (1)_{l,lambda} / ((l-1)! l^k) sum_{m=0}^{l} C(l,m)(-1)^{l-m} E[(S_m)_{n,lambda}].
inline std::vector<polynomial> bel_via_sm_all(const distribution& y, const rational& lambda, int k,
                                              int n_max) {
    if (n_max < 0) throw negative_index("degree bound must be non-negative");
    const series mgf = deg_mgf_series(y, lambda, n_max);
    std::vector<series> powers;
    powers.reserve(static_cast<std::size_t>(n_max) + 1);
    powers.push_back(series::one(n_max));
    for (int m = 1; m <= n_max; ++m) powers.push_back(powers.back() * mgf);

    std::vector<rational> weight(static_cast<std::size_t>(n_max) + 1, rational(0));
    rational one_falling = 1;
    rational inv_fact = 1; // 1/(l-1)!
    for (int l = 1; l <= n_max; ++l) {
        one_falling *= 1 - (l - 1) * lambda;
        if (l >= 2) inv_fact /= l - 1;
        weight[static_cast<std::size_t>(l)] =
            one_falling * inv_fact * pow_rational(rational(l), -static_cast<long long>(k));
    }

    std::vector<polynomial> out(static_cast<std::size_t>(n_max) + 1);
    out[0] = polynomial(1);
    for (int n = 1; n <= n_max; ++n) {
        std::vector<rational> cs(static_cast<std::size_t>(n) + 1, rational(0));
        for (int l = 1; l <= n; ++l) {
            rational alt = 0;
            for (int m = 0; m <= l; ++m) {
                const rational term = rational(binomial(l, m)) *
                                      powers[static_cast<std::size_t>(m)].egf_coeff(n).constant_value();
                alt += ((l - m) % 2 == 0) ? term : -term;
            }
            cs[static_cast<std::size_t>(l)] = weight[static_cast<std::size_t>(l)] * alt;
        }
        out[static_cast<std::size_t>(n)] = polynomial(std::move(cs));
    }
    return out;
}

inline polynomial bel_closed(const poly_bell_query& q) {
    return bel_closed_all(q.dist, q.lambda, q.k, q.n).back();
}
inline polynomial bel_gf(const poly_bell_query& q) {
    return bel_gf_all(q.dist, q.lambda, q.k, q.n).back();
}
inline polynomial bel_via_sm(const poly_bell_query& q) {
    return bel_via_sm_all(q.dist, q.lambda, q.k, q.n).back();
}

} // namespace polybell
