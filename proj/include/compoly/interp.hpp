#pragma once

// Polynomial interpolation of the exponential function q^x at the nodes
// beta_0, ..., beta_k. The leading coefficient of the interpolant is
// (-1)^k g_c(q); the analogous statement with a truncated multiset function
// on the right-hand side recovers each coefficient f_i of f_c.

#include "compoly/composition.hpp"
#include "compoly/poly.hpp"

#include <stdexcept>
#include <vector>

namespace compoly {

struct SingularMatrix : std::domain_error {
    SingularMatrix() : std::domain_error("singular interpolation matrix") {}
};

// Square matrix of polynomials, rows indexed 0..k.
class PolyMatrix {
public:
    explicit PolyMatrix(std::size_t n) : n_(n), data_(n * n) {}

    std::size_t size() const { return n_; }
    Poly& at(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Poly& at(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<Poly> data_;
};

// Vandermonde matrix (beta): entry (i, j) = beta_i^j.
inline PolyMatrix vandermonde_matrix(const Composition& c) {
    const std::size_t m = c.length() + 1;
    PolyMatrix M(m);
    for (std::size_t i = 0; i < m; ++i) {
        Rational p = 1;
        for (std::size_t j = 0; j < m; ++j) {
            M.at(i, j) = Poly(p);
            p *= Rational(c.beta()[i]);
        }
    }
    return M;
}

// det(beta) = prod_{0 <= i < j <= k} (beta_j - beta_i); positive since the
// beta are strictly increasing.
inline Rational vandermonde_det(const Composition& c) {
    Int d = 1;
    for (std::size_t i = 0; i + 1 <= c.length(); ++i)
        for (std::size_t j = i + 1; j <= c.length(); ++j)
            d *= Int(c.beta()[j]) - Int(c.beta()[i]);
    return Rational(d);
}

namespace detail {

inline Poly det_cofactor(const PolyMatrix& M, std::vector<std::size_t> cols, std::size_t row) {
    if (cols.size() == 1) return M.at(row, cols[0]);
    Poly d;
    for (std::size_t t = 0; t < cols.size(); ++t) {
        if (M.at(row, cols[t]).is_zero()) continue;
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < cols.size(); ++s)
            if (s != t) rest.push_back(cols[s]);
        Poly sub = det_cofactor(M, std::move(rest), row + 1);
        Poly term = M.at(row, cols[t]) * sub;
        d = (t % 2 == 0) ? d + term : d - term;
    }
    return d;
}

// Bareiss fraction-free elimination; every division is exact over Poly.
inline Poly det_bareiss(PolyMatrix M) {
    const std::size_t n = M.size();
    Poly prev = Poly::one();
    int sign = 1;
    for (std::size_t p = 0; p + 1 < n; ++p) {
        if (M.at(p, p).is_zero()) {
            std::size_t r = p + 1;
            while (r < n && M.at(r, p).is_zero()) ++r;
            if (r == n) return Poly();
            for (std::size_t j = p; j < n; ++j) std::swap(M.at(p, j), M.at(r, j));
            sign = -sign;
        }
        for (std::size_t i = p + 1; i < n; ++i)
            for (std::size_t j = p + 1; j < n; ++j)
                M.at(i, j) = (M.at(p, p) * M.at(i, j) - M.at(i, p) * M.at(p, j))
                                 .divide_exact(prev);
        prev = M.at(p, p);
    }
    Poly d = M.at(n - 1, n - 1);
    return sign == 1 ? d : -d;
}

}  // namespace detail

// Exact determinant: cofactor expansion for small matrices, fraction-free
// elimination above.
inline Poly poly_det(const PolyMatrix& M) {
    if (M.size() == 0) return Poly::one();
    if (M.size() <= 5) {
        std::vector<std::size_t> cols(M.size());
        for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
        return detail::det_cofactor(M, std::move(cols), 0);
    }
    return detail::det_bareiss(M);
}

// Solves (beta) a = (q^{beta_0}, ..., q^{beta_k}) for the leading coefficient
// a_k by Cramer's rule: a_k = det(beta with last column replaced) / det(beta).
inline Poly interpolation_leading_coeff(const Composition& c) {
    PolyMatrix M = vandermonde_matrix(c);
    const std::size_t m = M.size();
    for (std::size_t i = 0; i < m; ++i)
        M.at(i, m - 1) = Poly::monomial(Rational(1), c.beta()[i]);
    Rational det = vandermonde_det(c);
    if (det == 0) throw SingularMatrix();  // cannot occur: beta strictly increasing
    return poly_det(M) * (Rational(1) / det);
}

// Leading coefficient of the degree-<=k polynomial through the points
// (beta_j, d(beta_j)), where d(x) = ((k over i-x)) for x <= i and 0 above.
// Equals (-1)^k f_i.
inline Rational shifted_coefficient_interp(const Composition& c, unsigned i) {
    const unsigned k = c.length();
    if (i > c.size() - k) throw std::out_of_range("coefficient index");
    // Leading coefficient of the Lagrange interpolant:
    //   sum_j d(beta_j) / prod_{l != j} (beta_j - beta_l)
    Rational a = 0;
    for (unsigned j = 0; j <= k; ++j) {
        const unsigned bj = c.beta()[j];
        if (bj > i) continue;
        Int denom = 1;
        for (unsigned l = 0; l <= k; ++l)
            if (l != j) denom *= Int(bj) - Int(c.beta()[l]);
        a += ratio(multiset_coeff(k, i - bj), denom);
    }
    return a;
}

}  // namespace compoly
