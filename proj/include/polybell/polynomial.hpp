#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "polybell/rational.hpp"

namespace polybell {

// Dense univariate polynomial in x over the rationals. Trailing zero
// coefficients are trimmed, so the zero polynomial is the empty list and
// equality is plain coefficient comparison.
class polynomial {
public:
    polynomial() = default;
    polynomial(const rational& c) {
        if (c != 0) coeffs_.push_back(c);
    }
    polynomial(int c) : polynomial(rational(c)) {}
    explicit polynomial(std::vector<rational> cs) : coeffs_(std::move(cs)) { trim(); }

    static polynomial x() { return polynomial(std::vector<rational>{0, 1}); }

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const rational& coeff(int i) const {
        static const rational zero{};
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
        return coeffs_[static_cast<std::size_t>(i)];
    }
    const std::vector<rational>& coeffs() const { return coeffs_; }

    // The value of a constant polynomial (0 for the zero polynomial).
    rational constant_value() const {
        if (!is_constant()) throw std::logic_error("polynomial is not constant");
        return coeffs_.empty() ? rational(0) : coeffs_[0];
    }

    rational eval(const rational& at) const {
        rational acc = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * at + coeffs_[i];
        return acc;
    }

    polynomial& operator+=(const polynomial& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
        trim();
        return *this;
    }
    polynomial& operator-=(const polynomial& o) {
        if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
        trim();
        return *this;
    }
    polynomial& operator*=(const polynomial& o) {
        *this = *this * o;
        return *this;
    }
    polynomial& operator*=(const rational& c) {
        if (c == 0) {
            coeffs_.clear();
            return *this;
        }
        for (auto& a : coeffs_) a *= c;
        return *this;
    }

    friend polynomial operator+(polynomial a, const polynomial& b) { return a += b; }
    friend polynomial operator-(polynomial a, const polynomial& b) { return a -= b; }
    friend polynomial operator-(const polynomial& a) {
        polynomial r = a;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend polynomial operator*(const polynomial& a, const polynomial& b) {
        if (a.is_zero() || b.is_zero()) return polynomial{};
        std::vector<rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return polynomial(std::move(out));
    }
    friend polynomial operator*(polynomial a, const rational& c) { return a *= c; }
    friend polynomial operator*(const rational& c, polynomial a) { return a *= c; }

    friend bool operator==(const polynomial& a, const polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const polynomial& a, const polynomial& b) { return !(a == b); }

    // Bracketed coefficient list, lowest degree first; diagnostics only.
    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ", ";
            s += coeffs_[i].str();
        }
        if (coeffs_.empty()) s += "0";
        return s + "]";
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<rational> coeffs_;
};

} // namespace polybell
