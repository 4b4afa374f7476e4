#pragma once

// Exact arithmetic substrate: arbitrary-precision integers and rationals.
// All quantities in this library (coefficients, volumes, z-parameters) are
// kept exact; no operation ever rounds.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace compoly {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial(const Int& n, unsigned k) {
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    if (n < Int(k)) return 0;
    Int r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - Int(i - 1);
        r /= i;
    }
    return r;
}

// Multiset coefficient ((n over k)) = C(n+k-1, k): number of k-multisets
// from an n-element set. ((n over 0)) = 1.
inline Int multiset_coeff(unsigned n, unsigned k) {
    if (k == 0) return 1;
    return binomial(Int(n) + Int(k) - 1, k);
}

// num/den with the sign moved to the numerator; cpp_rational's two-argument
// constructor rejects negative denominators.
inline Rational ratio(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(std::move(num), std::move(den));
}

// Parses "p" or "p/q" with optional leading '-'. Denominator must be positive.
inline Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den <= 0) throw std::invalid_argument("denominator must be positive");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational '" + s + "': " + e.what());
    }
}

inline std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace compoly
