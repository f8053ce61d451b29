#pragma once

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polybell/poly_bell.hpp"

namespace polybell {

using json = nlohmann::ordered_json;

// Partial overrides merged onto each catalog entry's default grid. Fields an
// entry does not range over are ignored by that entry.
struct grid_overrides {
    std::optional<std::vector<rational>> lambdas;
    std::optional<std::vector<int>> ks;
    std::optional<int> n_max;
    std::optional<int> l_max; // absolute cap: l runs n+1 .. l_max
    std::optional<std::vector<distribution>> dists;
    std::optional<std::vector<rational>> ps;
    std::optional<std::vector<rational>> alphas;
};

// The acceptance grid. Identity entries draw their defaults from here so CI
// and the acceptance suite reference one spelled-out configuration.
namespace acceptance_grid {

inline std::vector<rational> lambdas() {
    return {rational(0), make_rational(1, 3), make_rational(-1, 2), rational(2)};
}
inline std::vector<int> ks() { return {-2, -1, 0, 1, 2, 3}; }
inline constexpr int n_max = 12;
inline std::vector<distribution> dists() {
    return {point_mass{1}, bernoulli{make_rational(2, 5)}, poisson{make_rational(3, 2)},
            gamma_dist{1, 1}, finite_discrete{{{1, make_rational(1, 2)}, {2, make_rational(1, 2)}}}};
}
inline std::vector<rational> bernoulli_ps() { return {make_rational(2, 5), rational(1)}; }
inline std::vector<rational> poisson_alphas() { return {rational(1), make_rational(3, 2)}; }
inline std::vector<rational> gamma_alphas() { return {rational(1), rational(2), make_rational(1, 2)}; }
// Degeneracy values 1/j at which (1)_{l,lambda} vanishes for some l in the
// grid; the prefactor-free vanishing sums are exercised there as well.
inline std::vector<rational> excluded_lambdas() {
    return {rational(1), make_rational(1, 2), make_rational(1, 3)};
}
inline constexpr int vanishing_n_max = 8;
inline constexpr int l_span = 4;
inline constexpr int t25_n_max = 10;
inline constexpr int t28_n_max = 10;

} // namespace acceptance_grid

struct identity_failure {
    std::vector<std::pair<std::string, std::string>> params;
    json lhs;
    json rhs;
};

// Outcome of checking one identity over a grid; failures carry the exact
// values, so passed is equivalent to the list being empty.
struct identity_report {
    std::string id;
    long grid_size = 0;
    bool passed = true;
    std::vector<identity_failure> failures;
    std::string detail; // optional adjudication note

    json to_json() const {
        json j;
        j["id"] = id;
        j["grid_size"] = grid_size;
        j["passed"] = passed;
        j["failures"] = json::array();
        for (const auto& f : failures) {
            json fj;
            fj["params"] = json::object();
            for (const auto& [name, value] : f.params) fj["params"][name] = value;
            fj["lhs"] = f.lhs;
            fj["rhs"] = f.rhs;
            j["failures"].push_back(std::move(fj));
        }
        if (!detail.empty()) j["detail"] = detail;
        return j;
    }
};

namespace detail {

inline json rational_json(const rational& r) { return to_string(r); }

inline json polynomial_json(const polynomial& p) {
    json arr = json::array();
    for (const auto& c : p.coeffs()) arr.push_back(to_string(c));
    return arr;
}

// Accumulates grid points and failures; failure values are capped so a
// systematically failing variant cannot flood the report.
class report_builder {
public:
    explicit report_builder(std::string id) { rep_.id = std::move(id); }

    void check(const std::vector<std::pair<std::string, std::string>>& params, const json& lhs,
               const json& rhs) {
        ++rep_.grid_size;
        if (lhs != rhs) force_failure(params, lhs, rhs);
    }

    // Records a failure that is not tied to a grid point (adjudication).
    void force_failure(const std::vector<std::pair<std::string, std::string>>& params,
                       const json& lhs, const json& rhs) {
        if (rep_.failures.size() < max_recorded_failures) rep_.failures.push_back({params, lhs, rhs});
        truncated_ = rep_.failures.size() >= max_recorded_failures;
        all_ok_ = false;
    }

    long points() const { return rep_.grid_size; }
    bool all_ok() const { return all_ok_; }

    identity_report finish(std::string detail = "") {
        if (rep_.grid_size == 0)
            throw grid_mismatch("identity " + rep_.id + ": the requested grid contains no points");
        rep_.passed = all_ok_;
        if (truncated_ && !all_ok_) {
            if (!detail.empty()) detail += "; ";
            detail += "failure list truncated";
        }
        rep_.detail = std::move(detail);
        return std::move(rep_);
    }

private:
    static constexpr std::size_t max_recorded_failures = 10;
    identity_report rep_;
    bool all_ok_ = true;
    bool truncated_ = false;
};

template <typename T>
T merged(const std::optional<T>& override_value, T fallback) {
    return override_value ? *override_value : std::move(fallback);
}

inline std::vector<std::pair<std::string, std::string>> params_of(
    std::initializer_list<std::pair<std::string, std::string>> kv) {
    return {kv.begin(), kv.end()};
}

// l runs n+1 .. cap; with no absolute cap the span defaults to l_span above n.
inline std::pair<int, int> l_range(int n, const std::optional<int>& l_max, int l_span) {
    const int lo = n + 1;
    const int hi = l_max ? *l_max : n + l_span;
    return {lo, hi};
}

} // namespace detail

// ---------------------------------------------------------------------------
// Catalog entries
// ---------------------------------------------------------------------------

namespace identities {

// Bel_{n,lambda}^{(1,Y)}(x) = sum_{l=1}^{n} (1)_{l,lambda} {n l}_{Y,lambda} x^l
// (the k = 1 reduction), against the generating-function route. The degree
// variable is a natural number; the summation index is distinct from it.
inline identity_report t21(const grid_overrides& ov) {
    detail::report_builder rb("T2.1");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto dists = detail::merged(ov.dists, acceptance_grid::dists());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::n_max);
    for (const auto& y : dists) {
        const std::string y_text = to_string(y);
        for (const auto& lam : lambdas) {
            const auto gf = bel_gf_all(y, lam, 1, n_max);
            const auto& rows = polybell::detail::prob_deg_stirling_rows(y, lam, n_max);
            std::vector<rational> one_falling(static_cast<std::size_t>(n_max) + 1, rational(1));
            for (int l = 1; l <= n_max; ++l)
                one_falling[static_cast<std::size_t>(l)] =
                    one_falling[static_cast<std::size_t>(l - 1)] * (1 - (l - 1) * lam);
            for (int n = 1; n <= n_max; ++n) {
                std::vector<rational> cs(static_cast<std::size_t>(n) + 1, rational(0));
                for (int l = 1; l <= n; ++l)
                    cs[static_cast<std::size_t>(l)] = one_falling[static_cast<std::size_t>(l)] *
                                                      rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(l)];
                const polynomial closed{std::vector<rational>(cs)};
                rb.check(detail::params_of({{"dist", y_text},
                                            {"lambda", to_string(lam)},
                                            {"n", std::to_string(n)}}),
                         detail::polynomial_json(closed), detail::polynomial_json(gf[static_cast<std::size_t>(n)]));
            }
        }
    }
    return rb.finish();
}

// Triple-route agreement, closed form vs generating function.
inline identity_report t22(const grid_overrides& ov) {
    detail::report_builder rb("T2.2");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto ks = detail::merged(ov.ks, acceptance_grid::ks());
    const auto dists = detail::merged(ov.dists, acceptance_grid::dists());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::n_max);
    for (const auto& y : dists) {
        const std::string y_text = to_string(y);
        for (const auto& lam : lambdas)
            for (const int k : ks) {
                const auto closed = bel_closed_all(y, lam, k, n_max);
                const auto gf = bel_gf_all(y, lam, k, n_max);
                for (int n = 0; n <= n_max; ++n)
                    rb.check(detail::params_of({{"dist", y_text},
                                                {"lambda", to_string(lam)},
                                                {"k", std::to_string(k)},
                                                {"n", std::to_string(n)}}),
                             detail::polynomial_json(closed[static_cast<std::size_t>(n)]),
                             detail::polynomial_json(gf[static_cast<std::size_t>(n)]));
            }
    }
    return rb.finish();
}

// Triple-route agreement, independent-sum moments vs closed form.
inline identity_report t23a(const grid_overrides& ov) {
    detail::report_builder rb("T2.3a");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto ks = detail::merged(ov.ks, acceptance_grid::ks());
    const auto dists = detail::merged(ov.dists, acceptance_grid::dists());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::n_max);
    for (const auto& y : dists) {
        const std::string y_text = to_string(y);
        for (const auto& lam : lambdas)
            for (const int k : ks) {
                const auto via_sm = bel_via_sm_all(y, lam, k, n_max);
                const auto closed = bel_closed_all(y, lam, k, n_max);
                for (int n = 0; n <= n_max; ++n)
                    rb.check(detail::params_of({{"dist", y_text},
                                                {"lambda", to_string(lam)},
                                                {"k", std::to_string(k)},
                                                {"n", std::to_string(n)}}),
                             detail::polynomial_json(via_sm[static_cast<std::size_t>(n)]),
                             detail::polynomial_json(closed[static_cast<std::size_t>(n)]));
            }
    }
    return rb.finish();
}

namespace vanishing {

// sum_{m=0}^{l} C(l,m) (-1)^{l-m} E[(S_m)_{n,lambda}], optionally multiplied
// by (1)_{l,lambda}; exactly zero whenever l >= n+1 because the alternating
// sum is l! [t^l-and-above] of (E[e_lambda^Y(t)] - 1)^l.
inline identity_report alternating_sm_sum(std::string id, bool with_prefactor,
                                          const std::vector<rational>& lambdas,
                                          const std::vector<distribution>& dists, int n_cap,
                                          const std::optional<int>& l_max, int l_span) {
    detail::report_builder rb(std::move(id));
    int l_hi_global = 0;
    for (int n = 1; n <= n_cap; ++n) {
        const auto [lo, hi] = detail::l_range(n, l_max, l_span);
        (void)lo;
        l_hi_global = std::max(l_hi_global, hi);
    }
    for (const auto& y : dists) {
        const std::string y_text = to_string(y);
        for (const auto& lam : lambdas) {
            const series mgf = deg_mgf_series(y, lam, n_cap);
            std::vector<series> powers{series::one(n_cap)};
            for (int m = 1; m <= l_hi_global; ++m) powers.push_back(powers.back() * mgf);
            std::vector<rational> one_falling(static_cast<std::size_t>(l_hi_global) + 1, rational(1));
            for (int l = 1; l <= l_hi_global; ++l)
                one_falling[static_cast<std::size_t>(l)] =
                    one_falling[static_cast<std::size_t>(l - 1)] * (1 - (l - 1) * lam);
            for (int n = 1; n <= n_cap; ++n) {
                const auto [lo, hi] = detail::l_range(n, l_max, l_span);
                for (int l = lo; l <= hi; ++l) {
                    rational sum = 0;
                    for (int m = 0; m <= l; ++m) {
                        const rational term =
                            rational(binomial(l, m)) *
                            powers[static_cast<std::size_t>(m)].egf_coeff(n).constant_value();
                        sum += ((l - m) % 2 == 0) ? term : -term;
                    }
                    if (with_prefactor) sum *= one_falling[static_cast<std::size_t>(l)];
                    rb.check(detail::params_of({{"dist", y_text},
                                                {"lambda", to_string(lam)},
                                                {"n", std::to_string(n)},
                                                {"l", std::to_string(l)}}),
                             detail::rational_json(sum), detail::rational_json(0));
                }
            }
        }
    }
    return rb.finish();
}

} // namespace vanishing

// (1)_{l,lambda} sum_m C(l,m)(-1)^{l-m} E[(S_m)_{n,lambda}] = 0 for l >= n+1.
inline identity_report t23b(const grid_overrides& ov) {
    return vanishing::alternating_sm_sum(
        "T2.3b", true, detail::merged(ov.lambdas, acceptance_grid::lambdas()),
        detail::merged(ov.dists, acceptance_grid::dists()),
        detail::merged(ov.n_max, acceptance_grid::vanishing_n_max), ov.l_max,
        acceptance_grid::l_span);
}

// The same sum without the prefactor, including degeneracy values where the
// prefactor vanishes; the order argument makes it zero for every lambda.
inline identity_report r24a(const grid_overrides& ov) {
    std::vector<rational> lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    if (!ov.lambdas) {
        for (const auto& lam : acceptance_grid::excluded_lambdas())
            if (std::find(lambdas.begin(), lambdas.end(), lam) == lambdas.end())
                lambdas.push_back(lam);
    }
    return vanishing::alternating_sm_sum(
        "R2.4a", false, lambdas, detail::merged(ov.dists, acceptance_grid::dists()),
        detail::merged(ov.n_max, acceptance_grid::vanishing_n_max), ov.l_max,
        acceptance_grid::l_span);
}

// Classical limit: sum_m C(l,m)(-1)^{l-m} E[S_m^n] = 0 for l >= n+1.
inline identity_report r24b(const grid_overrides& ov) {
    return vanishing::alternating_sm_sum(
        "R2.4b", false, {rational(0)}, detail::merged(ov.dists, acceptance_grid::dists()),
        detail::merged(ov.n_max, acceptance_grid::vanishing_n_max), ov.l_max,
        acceptance_grid::l_span);
}

// Gamma moments in closed form: sum_m C(l,m)(-1)^{l-m} (alpha m + n - 1)_n = 0
// for l >= n+1.
inline identity_report r24c(const grid_overrides& ov) {
    detail::report_builder rb("R2.4c");
    const auto alphas = detail::merged(ov.alphas, acceptance_grid::gamma_alphas());
    const int n_cap = detail::merged(ov.n_max, acceptance_grid::vanishing_n_max);
    for (const auto& alpha : alphas) {
        for (int n = 1; n <= n_cap; ++n) {
            const auto [lo, hi] = detail::l_range(n, ov.l_max, acceptance_grid::l_span);
            for (int l = lo; l <= hi; ++l) {
                rational sum = 0;
                for (int m = 0; m <= l; ++m) {
                    const rational term = rational(binomial(l, m)) *
                                          falling_factorial(alpha * m + (n - 1), n);
                    sum += ((l - m) % 2 == 0) ? term : -term;
                }
                rb.check(detail::params_of({{"alpha", to_string(alpha)},
                                            {"n", std::to_string(n)},
                                            {"l", std::to_string(l)}}),
                         detail::rational_json(sum), detail::rational_json(0));
            }
        }
    }
    return rb.finish();
}

namespace t24_detail {

enum class variant { s1_n_l, s1_n_j };

inline const char* name(variant v) { return v == variant::s1_n_l ? "S1(n,l)" : "S1(n,j)"; }

// LHS: sum_{l=1}^{n} S_{1,lambda}(n,l) Bel_{l,lambda}^{(k,Y)}(x).
// RHS: sum_{j=1}^{n} sum_{l=1}^{j} (1)_{l,lambda}/l^{k-1} {j l}_Y S1(n, .) x^l
// where the first-kind index is l or j depending on the variant; only the
// j-index variant is consistent with expanding (log(1+t))^j / j!.
inline identity_report run(std::string id, std::optional<variant> only,
                           const grid_overrides& ov) {
    detail::report_builder rb(std::move(id));
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto ks = detail::merged(ov.ks, acceptance_grid::ks());
    const auto dists = detail::merged(ov.dists, acceptance_grid::dists());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::n_max);

    bool nj_ok = true;
    bool nl_failed = false;
    std::string nl_first_counterexample;

    const auto& s1 = stirling_table(stirling_kind::classical_first, 0, n_max);
    for (const auto& y : dists) {
        const std::string y_text = to_string(y);
        const auto& rows0 = polybell::detail::prob_deg_stirling_rows(y, 0, n_max);
        for (const auto& lam : lambdas) {
            const auto& s1lam = stirling_table(stirling_kind::degenerate_first, lam, n_max);
            std::vector<rational> one_falling(static_cast<std::size_t>(n_max) + 1, rational(1));
            for (int l = 1; l <= n_max; ++l)
                one_falling[static_cast<std::size_t>(l)] =
                    one_falling[static_cast<std::size_t>(l - 1)] * (1 - (l - 1) * lam);
            for (const int k : ks) {
                const auto bel = bel_closed_all(y, lam, k, n_max);
                std::vector<rational> weight(static_cast<std::size_t>(n_max) + 1, rational(0));
                for (int l = 1; l <= n_max; ++l)
                    weight[static_cast<std::size_t>(l)] =
                        one_falling[static_cast<std::size_t>(l)] *
                        pow_rational(rational(l), 1 - static_cast<long long>(k));
                for (int n = 1; n <= n_max; ++n) {
                    polynomial lhs;
                    for (int l = 1; l <= n; ++l)
                        lhs += bel[static_cast<std::size_t>(l)] * s1lam.value(n, l);
                    std::vector<rational> cs_nl(static_cast<std::size_t>(n) + 1, rational(0));
                    std::vector<rational> cs_nj(static_cast<std::size_t>(n) + 1, rational(0));
                    for (int j = 1; j <= n; ++j)
                        for (int l = 1; l <= j; ++l) {
                            const rational base = weight[static_cast<std::size_t>(l)] *
                                                  rows0[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
                            cs_nl[static_cast<std::size_t>(l)] += base * s1.value(n, l);
                            cs_nj[static_cast<std::size_t>(l)] += base * s1.value(n, j);
                        }
                    const polynomial rhs_nl{std::move(cs_nl)};
                    const polynomial rhs_nj{std::move(cs_nj)};
                    const auto params = detail::params_of({{"dist", y_text},
                                                           {"lambda", to_string(lam)},
                                                           {"k", std::to_string(k)},
                                                           {"n", std::to_string(n)}});
                    if (only) {
                        const polynomial& rhs = *only == variant::s1_n_l ? rhs_nl : rhs_nj;
                        rb.check(params, detail::polynomial_json(lhs), detail::polynomial_json(rhs));
                        continue;
                    }
                    // adjudication: the n-j variant must hold everywhere and
                    // the n-l variant must fail somewhere
                    rb.check(params, detail::polynomial_json(lhs), detail::polynomial_json(rhs_nj));
                    nj_ok = nj_ok && lhs == rhs_nj;
                    if (!nl_failed && lhs != rhs_nl) {
                        nl_failed = true;
                        nl_first_counterexample = "dist=" + y_text + " lambda=" + to_string(lam) +
                                                  " k=" + std::to_string(k) +
                                                  " n=" + std::to_string(n);
                    }
                }
            }
        }
    }
    if (only) return rb.finish();
    std::string det;
    if (nj_ok && nl_failed) {
        det = "variant S1(n,j) holds on the whole grid; variant S1(n,l) fails (first counterexample: " +
              nl_first_counterexample + "); pinned variant: S1(n,j)";
    } else if (nj_ok && !nl_failed) {
        det = "adjudication inconclusive: both variants hold on this grid";
        rb.force_failure(detail::params_of({{"adjudication", "both-variants-passed"}}),
                         json("S1(n,l)"), json("expected at least one counterexample"));
    } else {
        det = "variant S1(n,j) fails on this grid";
    }
    return rb.finish(det);
}

} // namespace t24_detail

// Adjudicating entry: passes when exactly the S1(n,j) variant holds.
inline identity_report t24(const grid_overrides& ov) {
    return t24_detail::run("T2.4", std::nullopt, ov);
}
// Addressable diagnostic evaluators for the two variants.
inline identity_report t24_variant_nl(const grid_overrides& ov) {
    return t24_detail::run("T2.4-variant-nl", t24_detail::variant::s1_n_l, ov);
}
inline identity_report t24_variant_nj(const grid_overrides& ov) {
    return t24_detail::run("T2.4-variant-nj", t24_detail::variant::s1_n_j, ov);
}

// Recurrence between consecutive polyexponential indices:
// sum_{m=1}^{n} C(n,m) Bel_m^{(k-1)}(x) E[Y(Y-lambda)_{n-m,lambda}]
//   = sum_{m=0}^{n-1} C(n,m) Bel_{m+1}^{(k)}(x) E[(Y)_{n-m,lambda}],
// with E[Y(Y-lambda)_{j,lambda}] = E[(Y)_{j+1,lambda}] since the shifted
// product telescopes into the longer falling factorial.
inline identity_report t25(const grid_overrides& ov) {
    detail::report_builder rb("T2.5");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto ks = detail::merged(ov.ks, acceptance_grid::ks());
    const auto dists = detail::merged(ov.dists, acceptance_grid::dists());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::t25_n_max);
    for (const auto& y : dists) {
        const std::string y_text = to_string(y);
        for (const auto& lam : lambdas) {
            std::vector<rational> moments(static_cast<std::size_t>(n_max) + 1);
            for (int j = 0; j <= n_max; ++j) moments[static_cast<std::size_t>(j)] = deg_moment(y, j, lam);
            for (const int k : ks) {
                const auto bel_k = bel_closed_all(y, lam, k, n_max);
                const auto bel_km1 = bel_closed_all(y, lam, k - 1, n_max);
                for (int n = 1; n <= n_max; ++n) {
                    polynomial lhs;
                    for (int m = 1; m <= n; ++m)
                        lhs += bel_km1[static_cast<std::size_t>(m)] *
                               (rational(binomial(n, m)) *
                                moments[static_cast<std::size_t>(n - m + 1)]);
                    polynomial rhs;
                    for (int m = 0; m <= n - 1; ++m)
                        rhs += bel_k[static_cast<std::size_t>(m + 1)] *
                               (rational(binomial(n, m)) * moments[static_cast<std::size_t>(n - m)]);
                    rb.check(detail::params_of({{"dist", y_text},
                                                {"lambda", to_string(lam)},
                                                {"k", std::to_string(k)},
                                                {"n", std::to_string(n)}}),
                             detail::polynomial_json(lhs), detail::polynomial_json(rhs));
                }
            }
        }
    }
    return rb.finish();
}

namespace t26_detail {

// sum_{m=1}^{n} (1)_{m,lambda}/m^{k-1} p^m {n m}_lambda x^m
inline polynomial bernoulli_closed_form(const rational& p, const rational& lam, int k, int n,
                                        const stirling_triangle& d2) {
    std::vector<rational> cs(static_cast<std::size_t>(n) + 1, rational(0));
    rational one_falling = 1;
    rational p_pow = 1;
    for (int m = 1; m <= n; ++m) {
        one_falling *= 1 - (m - 1) * lam;
        p_pow *= p;
        cs[static_cast<std::size_t>(m)] = one_falling * p_pow *
                                          pow_rational(rational(m), 1 - static_cast<long long>(k)) *
                                          d2.value(n, m);
    }
    return polynomial(std::move(cs));
}

} // namespace t26_detail

// Bernoulli(p) closed form against the generating-function route.
inline identity_report t26(const grid_overrides& ov) {
    detail::report_builder rb("T2.6");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto ks = detail::merged(ov.ks, acceptance_grid::ks());
    const auto ps = detail::merged(ov.ps, acceptance_grid::bernoulli_ps());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::n_max);
    for (const auto& p : ps) {
        const distribution y = bernoulli{p};
        for (const auto& lam : lambdas) {
            const auto& d2 = stirling_table(stirling_kind::degenerate_second, lam, n_max);
            for (const int k : ks) {
                const auto gf = bel_gf_all(y, lam, k, n_max);
                for (int n = 1; n <= n_max; ++n)
                    rb.check(detail::params_of({{"p", to_string(p)},
                                                {"lambda", to_string(lam)},
                                                {"k", std::to_string(k)},
                                                {"n", std::to_string(n)}}),
                             detail::polynomial_json(
                                 t26_detail::bernoulli_closed_form(p, lam, k, n, d2)),
                             detail::polynomial_json(gf[static_cast<std::size_t>(n)]));
            }
        }
    }
    return rb.finish();
}

// Bernoulli triple sum; collapsing its inner double sum through the
// first/second-kind orthogonality must reproduce the T2.6 closed form.
inline identity_report t27(const grid_overrides& ov) {
    detail::report_builder rb("T2.7");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto ks = detail::merged(ov.ks, acceptance_grid::ks());
    const auto ps = detail::merged(ov.ps, acceptance_grid::bernoulli_ps());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::n_max);
    for (const auto& lam : lambdas) {
        const auto& d2 = stirling_table(stirling_kind::degenerate_second, lam, n_max);
        const auto& s1lam = stirling_table(stirling_kind::degenerate_first, lam, n_max);
        std::vector<rational> one_falling(static_cast<std::size_t>(n_max) + 1, rational(1));
        for (int m = 1; m <= n_max; ++m)
            one_falling[static_cast<std::size_t>(m)] =
                one_falling[static_cast<std::size_t>(m - 1)] * (1 - (m - 1) * lam);
        for (const int k : ks) {
            // inner(j) = sum_{l<=j} sum_{m<=l} (1)_{m,lambda}/m^{k-1}
            //            S_{1,lambda}(l,m) {j l}_lambda
            std::vector<rational> inner(static_cast<std::size_t>(n_max) + 1, rational(0));
            for (int j = 1; j <= n_max; ++j) {
                rational acc = 0;
                for (int l = 1; l <= j; ++l)
                    for (int m = 1; m <= l; ++m)
                        acc += one_falling[static_cast<std::size_t>(m)] *
                               pow_rational(rational(m), 1 - static_cast<long long>(k)) *
                               s1lam.value(l, m) * d2.value(j, l);
                inner[static_cast<std::size_t>(j)] = acc;
            }
            for (const auto& p : ps) {
                for (int n = 1; n <= n_max; ++n) {
                    std::vector<rational> cs(static_cast<std::size_t>(n) + 1, rational(0));
                    rational p_pow = 1;
                    for (int j = 1; j <= n; ++j) {
                        p_pow *= p;
                        cs[static_cast<std::size_t>(j)] =
                            inner[static_cast<std::size_t>(j)] * d2.value(n, j) * p_pow;
                    }
                    rb.check(detail::params_of({{"p", to_string(p)},
                                                {"lambda", to_string(lam)},
                                                {"k", std::to_string(k)},
                                                {"n", std::to_string(n)}}),
                             detail::polynomial_json(polynomial(std::move(cs))),
                             detail::polynomial_json(
                                 t26_detail::bernoulli_closed_form(p, lam, k, n, d2)));
                }
            }
        }
    }
    return rb.finish();
}

// Gamma(1,1) double sum over Lah and first-kind numbers against the
// generating-function route.
inline identity_report t28(const grid_overrides& ov) {
    detail::report_builder rb("T2.8");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto ks = detail::merged(ov.ks, acceptance_grid::ks());
    const int n_max = detail::merged(ov.n_max, acceptance_grid::t28_n_max);
    const distribution y = gamma_dist{1, 1};
    const auto& lah = stirling_table(stirling_kind::lah, 0, n_max);
    const auto& s1 = stirling_table(stirling_kind::classical_first, 0, n_max);
    for (const auto& lam : lambdas) {
        std::vector<rational> one_falling(static_cast<std::size_t>(n_max) + 1, rational(1));
        for (int m = 1; m <= n_max; ++m)
            one_falling[static_cast<std::size_t>(m)] =
                one_falling[static_cast<std::size_t>(m - 1)] * (1 - (m - 1) * lam);
        for (const int k : ks) {
            const auto gf = bel_gf_all(y, lam, k, n_max);
            for (int n = 1; n <= n_max; ++n) {
                std::vector<rational> cs(static_cast<std::size_t>(n) + 1, rational(0));
                for (int m = 1; m <= n; ++m) {
                    rational acc = 0;
                    for (int l = m; l <= n; ++l)
                        acc += pow_rational(lam, n - l) * lah.value(l, m) * s1.value(n, l);
                    cs[static_cast<std::size_t>(m)] =
                        one_falling[static_cast<std::size_t>(m)] *
                        pow_rational(rational(m), 1 - static_cast<long long>(k)) * acc;
                }
                rb.check(detail::params_of({{"lambda", to_string(lam)},
                                            {"k", std::to_string(k)},
                                            {"n", std::to_string(n)}}),
                         detail::polynomial_json(polynomial(std::move(cs))),
                         detail::polynomial_json(gf[static_cast<std::size_t>(n)]));
            }
        }
    }
    return rb.finish();
}

// Poisson specialization of the vanishing sum:
// sum_{m=0}^{l} C(l,m)(-1)^{l-m} phi_{n,lambda}(alpha m) = 0 for l >= n+1.
inline identity_report c3(const grid_overrides& ov) {
    detail::report_builder rb("C3");
    const auto lambdas = detail::merged(ov.lambdas, acceptance_grid::lambdas());
    const auto alphas = detail::merged(ov.alphas, acceptance_grid::poisson_alphas());
    const int n_cap = detail::merged(ov.n_max, acceptance_grid::vanishing_n_max);
    for (const auto& alpha : alphas) {
        for (const auto& lam : lambdas) {
            for (int n = 1; n <= n_cap; ++n) {
                const polynomial phi = bell_poly(n, lam);
                const auto [lo, hi] = detail::l_range(n, ov.l_max, acceptance_grid::l_span);
                for (int l = lo; l <= hi; ++l) {
                    rational sum = 0;
                    for (int m = 0; m <= l; ++m) {
                        const rational term = rational(binomial(l, m)) * phi.eval(alpha * m);
                        sum += ((l - m) % 2 == 0) ? term : -term;
                    }
                    rb.check(detail::params_of({{"alpha", to_string(alpha)},
                                                {"lambda", to_string(lam)},
                                                {"n", std::to_string(n)},
                                                {"l", std::to_string(l)}}),
                             detail::rational_json(sum), detail::rational_json(0));
                }
            }
        }
    }
    return rb.finish();
}

} // namespace identities

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

struct identity_entry {
    std::string id;
    std::string description;
    std::function<identity_report(const grid_overrides&)> run;
    bool canonical = true; // enumerated by run_all
};

inline const std::vector<identity_entry>& identity_catalog() {
    static const std::vector<identity_entry> catalog = {
        {"T2.1", "k=1 closed form in probabilistic degenerate Stirling numbers vs the generating function",
         identities::t21},
        {"T2.2", "closed form vs generating function for all polyexponential indices", identities::t22},
        {"T2.3a", "independent-sum moment formula vs closed form", identities::t23a},
        {"T2.3b", "prefactored alternating sum of S_m degenerate moments vanishes above the diagonal",
         identities::t23b},
        {"R2.4a", "prefactor-free alternating sum vanishes, including degeneracy values where the prefactor is zero",
         identities::r24a},
        {"R2.4b", "classical-limit alternating sum of E[S_m^n] vanishes above the diagonal", identities::r24b},
        {"R2.4c", "alternating sum of gamma rising-factorial moments vanishes above the diagonal",
         identities::r24c},
        {"T2.4", "first-kind change of basis; adjudicates the S1(n,l) vs S1(n,j) index variants",
         identities::t24},
        {"T2.5", "recurrence linking consecutive polyexponential indices", identities::t25},
        {"T2.6", "Bernoulli closed form vs generating function", identities::t26},
        {"T2.7", "Bernoulli triple sum vs Bernoulli closed form", identities::t27},
        {"T2.8", "gamma(1,1) Lah/first-kind double sum vs generating function", identities::t28},
        {"C3", "Poisson alternating sum of degenerate Bell evaluations vanishes above the diagonal",
         identities::c3},
        {"T2.4-variant-nl", "diagnostic: the S1(n,l) index variant alone (expected to fail)",
         identities::t24_variant_nl, false},
        {"T2.4-variant-nj", "diagnostic: the S1(n,j) index variant alone (the pinned regression)",
         identities::t24_variant_nj, false},
    };
    return catalog;
}

inline const identity_entry& find_identity(const std::string& id) {
    for (const auto& entry : identity_catalog())
        if (entry.id == id) return entry;
    throw unknown_identity(id);
}

inline identity_report verify_identity(const std::string& id, const grid_overrides& ov = {}) {
    return find_identity(id).run(ov);
}

// Every canonical entry over its default grid merged with the overrides, in
// catalog order; repeated runs produce identical reports.
inline std::vector<identity_report> run_all(const grid_overrides& ov = {}) {
    std::vector<identity_report> reports;
    for (const auto& entry : identity_catalog())
        if (entry.canonical) reports.push_back(entry.run(ov));
    return reports;
}

// Override syntax: semicolon-separated clauses
//   n<=INT  l<=INT  lambda=r1,r2  k=i1,i2  p=r1,r2  alpha=r1,r2  dist=d1|d2
inline grid_overrides parse_grid_overrides(std::string_view text) {
    grid_overrides ov;
    if (text.empty()) return ov;
    for (const auto clause : detail::split(text, ';')) {
        if (clause.empty()) throw std::invalid_argument("empty grid clause");
        const auto fail = [&] {
            throw std::invalid_argument("malformed grid clause: \"" + std::string(clause) + "\"");
        };
        if (const auto le = clause.find("<="); le != std::string_view::npos) {
            const std::string_view name = clause.substr(0, le);
            const std::string value(clause.substr(le + 2));
            int parsed = 0;
            try {
                std::size_t used = 0;
                parsed = std::stoi(value, &used);
                if (used != value.size()) fail();
            } catch (const std::invalid_argument&) {
                fail();
            } catch (const std::out_of_range&) {
                fail();
            }
            if (name == "n") ov.n_max = parsed;
            else if (name == "l") ov.l_max = parsed;
            else fail();
            continue;
        }
        const auto eq = clause.find('=');
        if (eq == std::string_view::npos) fail();
        const std::string_view name = clause.substr(0, eq);
        const std::string_view value = clause.substr(eq + 1);
        if (value.empty()) fail();
        if (name == "lambda" || name == "p" || name == "alpha") {
            std::vector<rational> values;
            for (const auto part : detail::split(value, ',')) values.push_back(parse_rational(part));
            if (name == "lambda") ov.lambdas = std::move(values);
            else if (name == "p") ov.ps = std::move(values);
            else ov.alphas = std::move(values);
        } else if (name == "k") {
            std::vector<int> values;
            for (const auto part : detail::split(value, ',')) {
                try {
                    std::size_t used = 0;
                    values.push_back(std::stoi(std::string(part), &used));
                    if (used != part.size()) fail();
                } catch (const std::invalid_argument&) {
                    fail();
                } catch (const std::out_of_range&) {
                    fail();
                }
            }
            ov.ks = std::move(values);
        } else if (name == "dist") {
            std::vector<distribution> values;
            for (const auto part : detail::split(value, '|')) values.push_back(parse_distribution(part));
            ov.dists = std::move(values);
        } else {
            fail();
        }
    }
    return ov;
}

} // namespace polybell
