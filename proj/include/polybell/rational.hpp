#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polybell {

using bigint = boost::multiprecision::cpp_int;

// Exact rational scalar. Always in lowest terms with a positive denominator;
// every operation in this library is exact (no rounding anywhere).
using rational = boost::multiprecision::cpp_rational;

// Accepts any sign combination and normalizes; rejects a zero denominator.
inline rational make_rational(const bigint& num, const bigint& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return rational(num) / rational(den);
}

inline bool is_integer(const rational& r) { return denominator(r) == 1; }

// Wire form: "p/q" with q > 1, otherwise just "p"; sign on the numerator.
inline std::string to_string(const rational& r) { return r.str(); }

// Strict parser for the wire form: [-]digits[/digits]. Anything else,
// including whitespace and a zero denominator, is rejected.
inline rational parse_rational(std::string_view text) {
    const auto fail = [&]() -> rational {
        throw std::invalid_argument("malformed rational: \"" + std::string(text) + "\"");
    };
    std::size_t i = 0;
    if (i < text.size() && text[i] == '-') ++i;
    const std::size_t num_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_begin) return fail();
    bigint num(std::string(text.substr(0, i)));
    if (i == text.size()) return rational(num);
    if (text[i] != '/') return fail();
    const std::size_t den_begin = ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_begin || i != text.size()) return fail();
    bigint den(std::string(text.substr(den_begin)));
    if (den == 0) return fail();
    return rational(num) / rational(den);
}

inline bigint factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of a negative integer");
    bigint r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// C(n, k); zero outside the triangle. The running product stays integral
// because r * (n-i) is divisible by i+1 at every step.
inline bigint binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    bigint r = 1;
    for (int i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

// base^e with 0^0 = 1 (empty product); negative e inverts, so base must be
// nonzero there.
inline rational pow_rational(const rational& base, long long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero base with negative exponent");
        return rational(1) / pow_rational(base, -e);
    }
    rational acc = 1;
    rational b = base;
    while (e > 0) {
        if (e & 1) acc *= b;
        e >>= 1;
        if (e > 0) b *= b;
    }
    return acc;
}

} // namespace polybell
