#pragma once

// Dense univariate polynomials over the rationals. Values are immutable in
// spirit: every operation returns a fresh, normalized polynomial (trailing
// zero coefficients stripped, so equality is structural).

#include "compoly/rational.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <utility>
#include <vector>

namespace compoly {

struct NonExactDivision : std::domain_error {
    NonExactDivision() : std::domain_error("polynomial division left a nonzero remainder") {}
};

class Poly {
public:
    Poly() = default;
    explicit Poly(Rational c) { if (c != 0) coeffs_.push_back(std::move(c)); }
    explicit Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

    static Poly zero() { return Poly(); }
    static Poly one() { return Poly(Rational(1)); }

    // c * q^e
    static Poly monomial(Rational c, std::size_t e) {
        if (c == 0) return Poly();
        std::vector<Rational> v(e + 1);
        v[e] = std::move(c);
        return Poly(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }

    // Degree of the zero polynomial is -1 by convention.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    const std::vector<Rational>& coeffs() const { return coeffs_; }

    Rational coeff(std::size_t i) const {
        return i < coeffs_.size() ? coeffs_[i] : Rational(0);
    }

    bool operator==(const Poly& o) const = default;

    Poly operator+(const Poly& o) const {
        std::vector<Rational> v(std::max(coeffs_.size(), o.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = coeff(i) + o.coeff(i);
        return Poly(std::move(v));
    }

    Poly operator-() const {
        std::vector<Rational> v(coeffs_);
        for (auto& c : v) c = -c;
        return Poly(std::move(v));
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<Rational> v(coeffs_.size() + o.coeffs_.size() - 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
                v[i + j] += coeffs_[i] * o.coeffs_[j];
        return Poly(std::move(v));
    }

    Poly operator*(const Rational& c) const {
        std::vector<Rational> v(coeffs_);
        for (auto& x : v) x *= c;
        return Poly(std::move(v));
    }

    // Exact quotient; throws NonExactDivision if the remainder is nonzero.
    Poly divide_exact(const Poly& d) const {
        if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
        if (is_zero()) return Poly();
        if (degree() < d.degree()) throw NonExactDivision();
        std::vector<Rational> rem(coeffs_);
        std::vector<Rational> quot(coeffs_.size() - d.coeffs_.size() + 1);
        const Rational& lead = d.coeffs_.back();
        for (std::size_t i = quot.size(); i-- > 0;) {
            Rational q = rem[i + d.coeffs_.size() - 1] / lead;
            quot[i] = q;
            if (q == 0) continue;
            for (std::size_t j = 0; j < d.coeffs_.size(); ++j)
                rem[i + j] -= q * d.coeffs_[j];
        }
        for (const auto& r : rem)
            if (r != 0) throw NonExactDivision();
        return Poly(std::move(quot));
    }

    // Horner evaluation.
    Rational eval(const Rational& x) const {
        Rational r = 0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * x + coeffs_[i];
        return r;
    }

    // p(q^m): every exponent multiplied by m.
    Poly substitute_power(unsigned m) const {
        if (m == 0) throw std::invalid_argument("substitute_power: m must be >= 1");
        if (m == 1 || is_zero()) return *this;
        std::vector<Rational> v((coeffs_.size() - 1) * m + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i * m] = coeffs_[i];
        return Poly(std::move(v));
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly();
        std::vector<Rational> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Rational(i);
        return Poly(std::move(v));
    }

    // Antiderivative with zero constant term.
    Poly integral() const {
        if (is_zero()) return Poly();
        std::vector<Rational> v(coeffs_.size() + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            v[i + 1] = coeffs_[i] / Rational(i + 1);
        return Poly(std::move(v));
    }

    Poly reversed() const {
        std::vector<Rational> v(coeffs_.rbegin(), coeffs_.rend());
        return Poly(std::move(v));
    }

    static Poly parse(const nlohmann::json& arr) {
        std::vector<Rational> v;
        for (const auto& s : arr) v.push_back(parse_rational(s.get<std::string>()));
        return Poly(std::move(v));
    }

    nlohmann::json to_json() const {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : coeffs_) arr.push_back(compoly::to_string(c));
        return arr;
    }

    std::string str(const std::string& var = "q") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += compoly::to_string(coeffs_[i]);
            if (i >= 1) s += "*" + var;
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<Rational> coeffs_;  // coeffs_[i] = coefficient of q^i
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

struct CoeffChecks {
    bool positive = false;
    bool unimodal = false;
    bool log_concave = false;
};

// Checks on the coefficient sequence c_0..c_deg (exact comparisons):
//   positive:    every coefficient > 0
//   unimodal:    rises weakly then falls weakly
//   log_concave: c_j^2 >= c_{j-1} c_{j+1} for all interior j
template <typename Seq>
CoeffChecks coeff_checks_seq(const Seq& c) {
    CoeffChecks r;
    const std::size_t m = c.size();
    r.positive = m > 0;
    for (std::size_t i = 0; i < m; ++i)
        if (!(c[i] > 0)) { r.positive = false; break; }
    r.unimodal = true;
    std::size_t i = 1;
    while (i < m && c[i] >= c[i - 1]) ++i;
    while (i < m && c[i] <= c[i - 1]) ++i;
    r.unimodal = (i == m);
    r.log_concave = true;
    for (std::size_t j = 1; j + 1 < m; ++j)
        if (c[j] * c[j] < c[j - 1] * c[j + 1]) { r.log_concave = false; break; }
    return r;
}

inline CoeffChecks coeff_checks(const Poly& p) { return coeff_checks_seq(p.coeffs()); }

}  // namespace compoly
