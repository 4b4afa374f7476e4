#pragma once

// Compositions c = (c_1,...,c_k) of n and their composition polynomials
//
//   g_c(q) = integral of t_1^{c_1-1}...t_k^{c_k-1} over q <= t_1 <= ... <= t_k <= 1
//          = sum_i q^{beta_i} / prod_{j != i} (beta_j - beta_i)
//
// computed by three independent routes (closed form, recursion, symbolic
// iterated integration), together with the reduced polynomial
// f_c = g_c / (1-q)^k and the identities relating them.

#include "compoly/poly.hpp"
#include "compoly/rational.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace compoly {

class Composition {
public:
    explicit Composition(std::vector<unsigned> parts) : parts_(std::move(parts)) {
        if (parts_.empty()) throw std::invalid_argument("composition needs at least one part");
        beta_.reserve(parts_.size() + 1);
        beta_.push_back(0);
        for (unsigned p : parts_) {
            if (p == 0) throw std::invalid_argument("composition parts must be positive");
            beta_.push_back(beta_.back() + p);
        }
    }

    // Parses "1,2,2".
    static Composition parse(const std::string& s) {
        std::vector<unsigned> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            std::size_t pos = 0;
            long v;
            try {
                v = std::stol(tok, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad composition part '" + tok + "'");
            }
            if (pos != tok.size() || v <= 0)
                throw std::invalid_argument("bad composition part '" + tok + "'");
            parts.push_back(static_cast<unsigned>(v));
        }
        if (parts.empty()) throw std::invalid_argument("empty composition");
        return Composition(std::move(parts));
    }

    const std::vector<unsigned>& parts() const { return parts_; }
    unsigned length() const { return static_cast<unsigned>(parts_.size()); }  // k
    unsigned size() const { return beta_.back(); }                            // n

    // Partial sums beta_0 = 0 < beta_1 < ... < beta_k = n.
    const std::vector<unsigned>& beta() const { return beta_; }

    // Signed product [beta_i] = (-1)^i prod_{j != i} (beta_j - beta_i).
    Int signed_product(unsigned i) const {
        Int r = 1;
        for (unsigned j = 0; j < beta_.size(); ++j)
            if (j != i) r *= Int(beta_[j]) - Int(beta_[i]);
        return (i % 2 == 0) ? r : -r;
    }

    bool operator==(const Composition& o) const { return parts_ == o.parts_; }
    bool operator<(const Composition& o) const { return parts_ < o.parts_; }

    std::string str() const {
        std::string s;
        for (unsigned p : parts_) {
            if (!s.empty()) s += ",";
            s += std::to_string(p);
        }
        return s;
    }

private:
    std::vector<unsigned> parts_;
    std::vector<unsigned> beta_;
};

inline Composition reverse(const Composition& c) {
    std::vector<unsigned> p(c.parts().rbegin(), c.parts().rend());
    return Composition(std::move(p));
}

// c^m: parts c_m and c_{m+1} combined (1-based m, 1 <= m <= k-1).
inline Composition merge(const Composition& c, unsigned m) {
    if (m < 1 || m >= c.length())
        throw std::out_of_range("merge index must be in 1..k-1");
    std::vector<unsigned> p = c.parts();
    p[m - 1] += p[m];
    p.erase(p.begin() + m);
    return Composition(std::move(p));
}

struct TooShort : std::domain_error {
    TooShort() : std::domain_error("composition has a single part") {}
};

// c^L = (c_2,...,c_k)
inline Composition truncate_left(const Composition& c) {
    if (c.length() < 2) throw TooShort();
    return Composition({c.parts().begin() + 1, c.parts().end()});
}

// c^R = (c_1,...,c_{k-1})
inline Composition truncate_right(const Composition& c) {
    if (c.length() < 2) throw TooShort();
    return Composition({c.parts().begin(), c.parts().end() - 1});
}

inline Composition scale(const Composition& c, unsigned m) {
    std::vector<unsigned> p = c.parts();
    for (auto& x : p) x *= m;
    return Composition(std::move(p));
}

// g_c(q) = sum_{i=0}^k q^{beta_i} / prod_{j != i}(beta_j - beta_i)
inline Poly g_closed_form(const Composition& c) {
    std::vector<Rational> v(c.size() + 1);
    for (unsigned i = 0; i <= c.length(); ++i) {
        Int denom = 1;
        for (unsigned j = 0; j <= c.length(); ++j)
            if (j != i) denom *= Int(c.beta()[j]) - Int(c.beta()[i]);
        v[c.beta()[i]] = ratio(1, denom);
    }
    return Poly(std::move(v));
}

// g_c(q) = (1/c_1) g_{c^1}(q) - (q^{c_1}/c_1) g_{c^L}(q), bottoming out at
// g_{(c_1)} = (1 - q^{c_1}) / c_1. Memoized within a sweep.
inline Poly g_recursive(const Composition& c,
                        std::map<std::vector<unsigned>, Poly>* memo = nullptr) {
    if (memo) {
        auto it = memo->find(c.parts());
        if (it != memo->end()) return it->second;
    }
    Poly result;
    if (c.length() == 1) {
        const unsigned c1 = c.parts()[0];
        result = (Poly::one() - Poly::monomial(Rational(1), c1)) * Rational(1, c1);
    } else {
        std::map<std::vector<unsigned>, Poly> local;
        auto* m = memo ? memo : &local;
        const unsigned c1 = c.parts()[0];
        Poly merged = g_recursive(merge(c, 1), m);
        Poly left = g_recursive(truncate_left(c), m);
        result = merged * Rational(1, c1) -
                 Poly::monomial(Rational(1, c1), c1) * left;
    }
    if (memo) memo->emplace(c.parts(), result);
    return result;
}

// Symbolic iterated integration. After integrating out t_1,...,t_{i-1}, the
// partial integrand is a homogeneous polynomial in (t_i, q) of degree
// beta_{i-1}; it is stored as a table indexed by the t-exponent. The final
// integration (upper limit 1) produces the polynomial in q alone.
inline Poly g_integral(const Composition& c) {
    const unsigned k = c.length();
    // table[a] = coefficient of t^a q^{deg-a}
    std::vector<Rational> table = {Rational(1)};  // the constant 1, degree 0
    unsigned deg = 0;
    for (unsigned i = 0; i + 1 < k; ++i) {
        // multiply by t^{c_i - 1}, antidifferentiate in t,
        // evaluate between t = q and t = t_{i+1}
        const unsigned shift = c.parts()[i] - 1;
        deg += shift;
        std::vector<Rational> next(deg + 2);
        for (unsigned a = 0; a < table.size(); ++a) {
            if (table[a] == 0) continue;
            const unsigned e = a + shift + 1;  // t-exponent after integration
            Rational v = table[a] / Rational(e);
            next[e] += v;      // upper limit t_{i+1}
            next[0] -= v;      // lower limit q contributes q^e, t-degree 0
        }
        deg += 1;
        table = std::move(next);
    }
    // outermost variable: integrate between q and 1
    const unsigned shift = c.parts()[k - 1] - 1;
    std::vector<Rational> coeffs(c.size() + 1);
    for (unsigned a = 0; a < table.size(); ++a) {
        if (table[a] == 0) continue;
        const unsigned e = a + shift + 1;
        Rational v = table[a] / Rational(e);
        coeffs[deg - a] += v;              // t = 1: remaining q-power is deg-a
        coeffs[deg - a + e] -= v;          // t = q: q^{deg-a} * q^e
    }
    return Poly(std::move(coeffs));
}

// g_{c^m} = (beta_m / n) g_{c^R} + (1 - beta_m / n) q^{c_1} g_{c^L}, exactly.
inline bool merged_recursion_check(const Composition& c, unsigned m) {
    if (c.length() < 2) throw TooShort();
    if (m < 1 || m >= c.length()) throw std::out_of_range("merge index");
    const Rational ratio(Int(c.beta()[m]), Int(c.size()));
    Poly lhs = g_closed_form(merge(c, m));
    Poly rhs = g_closed_form(truncate_right(c)) * ratio +
               Poly::monomial(Rational(1) - ratio, c.parts()[0]) *
                   g_closed_form(truncate_left(c));
    return lhs == rhs;
}

// f_c = g_c / (1-q)^k. The division is always exact; a nonzero remainder
// signals a bug upstream.
inline Poly f_reduced(const Composition& c) {
    Poly onemq(std::vector<Rational>{Rational(1), Rational(-1)});
    Poly d = Poly::one();
    for (unsigned i = 0; i < c.length(); ++i) d = d * onemq;
    return g_closed_form(c).divide_exact(d);
}

// f_i = sum_{j : beta_j <= i} (-1)^j / [beta_j] * ((k over i - beta_j)),
// with the multiset coefficient ((k over r)) = C(k+r-1, r).
inline Poly f_coefficient_formula(const Composition& c) {
    const unsigned k = c.length(), n = c.size();
    std::vector<Rational> v(n - k + 1);
    for (unsigned i = 0; i + k <= n; ++i) {
        Rational f = 0;
        for (unsigned j = 0; j <= k && c.beta()[j] <= i; ++j) {
            // (-1)^j / [beta_j] = 1 / prod_{l != j} (beta_l - beta_j)
            Int denom = 1;
            for (unsigned l = 0; l <= k; ++l)
                if (l != j) denom *= Int(c.beta()[l]) - Int(c.beta()[j]);
            f += ratio(multiset_coeff(k, i - c.beta()[j]), denom);
        }
        v[i] = f;
    }
    return Poly(std::move(v));
}

struct IdentityReport {
    // Reversal: g_{rev(c)}(q) = (-1)^k q^n g_c(1/q), i.e. the coefficient
    // sequence of g_{rev(c)} is the reversal of g_c's times (-1)^k. The sign
    // cancels against the (1-q)^k factor, so f_{rev(c)} is the plain
    // coefficient reversal of f_c.
    bool reversal = false;
    bool scaling = false;      // g_{mc}(q) = g_c(q^m) / m^k
    bool derivatives = false;  // g_c^{(i)}(1) = 0 for 0 <= i < k
    bool f_at_one = false;     // f_c(1) = 1/k!

    bool all() const { return reversal && scaling && derivatives && f_at_one; }
};

inline IdentityReport identity_checks(const Composition& c, unsigned m = 2) {
    IdentityReport r;
    const unsigned k = c.length(), n = c.size();
    Poly g = g_closed_form(c);

    Poly grev = g_closed_form(reverse(c));
    const Rational sign(k % 2 == 0 ? 1 : -1);
    std::vector<Rational> rev(n + 1);
    for (unsigned i = 0; i <= n; ++i) rev[i] = sign * g.coeff(n - i);
    r.reversal = grev == Poly(std::move(rev));

    Int mk = 1;
    for (unsigned i = 0; i < k; ++i) mk *= m;
    r.scaling = g_closed_form(scale(c, m)) == g.substitute_power(m) * Rational(1, mk);

    r.derivatives = true;
    Poly d = g;
    for (unsigned i = 0; i < k; ++i) {
        if (d.eval(Rational(1)) != 0) { r.derivatives = false; break; }
        d = d.derivative();
    }

    r.f_at_one = f_reduced(c).eval(Rational(1)) == Rational(1, factorial(k));
    return r;
}

}  // namespace compoly
