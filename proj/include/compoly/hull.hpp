#pragma once

// Exact rational linear algebra and convex hulls in ambient dimension <= 3.
// Used as the low-dimension Euclidean oracle for the subdivision and volume
// identities; everything is computed over Q with no rounding.

#include "compoly/errors.hpp"
#include "compoly/rational.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

namespace compoly {

using Point = std::vector<Rational>;

// Rank of a rational matrix by Gaussian elimination.
inline std::size_t matrix_rank(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m[0].size();
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            Rational f = m[r][c] / m[rank][c];
            for (std::size_t cc = c; cc < cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        ++rank;
    }
    return rank;
}

// Solves a square system A x = b exactly; nullopt if singular.
inline std::optional<Point> solve_linear(std::vector<std::vector<Rational>> a, Point b) {
    const std::size_t n = a.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        while (pivot < n && a[pivot][c] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[c], a[pivot]);
        std::swap(b[c], b[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t cc = c; cc < n; ++cc) a[r][cc] -= f * a[c][cc];
            b[r] -= f * b[c];
        }
    }
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

inline std::size_t affine_dimension(const std::vector<Point>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<std::vector<Rational>> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        std::vector<Rational> d(pts[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diffs.push_back(std::move(d));
    }
    return matrix_rank(std::move(diffs));
}

namespace detail {

inline Rational cross2(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Convex polygon (counterclockwise, no collinear points) by monotone chain.
inline std::vector<Point> hull2d(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<Point> h;
    for (int pass = 0; pass < 2; ++pass) {
        std::size_t start = h.size();
        for (const auto& p : pts) {
            while (h.size() >= start + 2 && cross2(h[h.size() - 2], h[h.size() - 1], p) <= 0)
                h.pop_back();
            h.push_back(p);
        }
        h.pop_back();
        std::reverse(pts.begin(), pts.end());
    }
    return h;
}

inline Rational polygon_area(const std::vector<Point>& poly) {
    Rational a = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    a /= 2;
    return a < 0 ? -a : a;
}

inline Point cross3(const Point& u, const Point& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

inline Rational dot(const Point& u, const Point& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline Point sub(const Point& a, const Point& b) {
    Point d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

}  // namespace detail

// Exact Euclidean volume of the convex hull of rational points; the ambient
// dimension must be <= 3. Degenerate (lower-dimensional) input gives 0.
inline Rational hull_volume(const std::vector<Point>& pts) {
    if (pts.empty()) return 0;
    const std::size_t dim = pts[0].size();
    if (dim > 3) throw DimensionTooHigh("hull_volume supports ambient dimension <= 3");
    if (affine_dimension(pts) < dim) return 0;

    if (dim == 1) {
        Rational lo = pts[0][0], hi = pts[0][0];
        for (const auto& p : pts) { lo = std::min(lo, p[0]); hi = std::max(hi, p[0]); }
        return hi - lo;
    }
    if (dim == 2) return detail::polygon_area(detail::hull2d(pts));

    // dim == 3: find supporting planes through point triples, then cone the
    // facets over the centroid.
    std::vector<Point> v(pts);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    const std::size_t m = v.size();

    Point centroid(3, Rational(0));
    for (const auto& p : v)
        for (int j = 0; j < 3; ++j) centroid[j] += p[j];
    for (int j = 0; j < 3; ++j) centroid[j] /= Rational(m);

    std::set<std::vector<std::size_t>> seen;
    Rational vol = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = j + 1; k < m; ++k) {
                Point nrm = detail::cross3(detail::sub(v[j], v[i]), detail::sub(v[k], v[i]));
                if (nrm[0] == 0 && nrm[1] == 0 && nrm[2] == 0) continue;
                Rational d = detail::dot(nrm, v[i]);
                bool above = false, below = false;
                for (const auto& p : v) {
                    Rational s = detail::dot(nrm, p) - d;
                    if (s > 0) above = true;
                    if (s < 0) below = true;
                    if (above && below) break;
                }
                if (above && below) continue;
                // supporting plane: collect the facet's points
                std::vector<std::size_t> facet;
                for (std::size_t t = 0; t < m; ++t)
                    if (detail::dot(nrm, v[t]) == d) facet.push_back(t);
                if (!seen.insert(facet).second) continue;

                // order the facet's extreme points by 2-D hull in a dropped
                // coordinate (choose one where the normal does not vanish)
                int drop = nrm[0] != 0 ? 0 : (nrm[1] != 0 ? 1 : 2);
                std::vector<Point> proj;
                for (auto t : facet) {
                    Point p2;
                    for (int c = 0; c < 3; ++c)
                        if (c != drop) p2.push_back(v[t][c]);
                    proj.push_back(std::move(p2));
                }
                std::vector<Point> poly2 = detail::hull2d(proj);
                // map back to 3-D points
                std::vector<Point> poly3;
                for (const auto& p2 : poly2)
                    for (auto t : facet) {
                        Point q2;
                        for (int c = 0; c < 3; ++c)
                            if (c != drop) q2.push_back(v[t][c]);
                        if (q2 == p2) { poly3.push_back(v[t]); break; }
                    }
                // fan triangulation coned over the centroid
                for (std::size_t t = 1; t + 1 < poly3.size(); ++t) {
                    Rational det = detail::dot(
                        detail::cross3(detail::sub(poly3[t], poly3[0]),
                                       detail::sub(poly3[t + 1], poly3[0])),
                        detail::sub(centroid, poly3[0]));
                    vol += det < 0 ? -det : det;
                }
            }
    return vol / 6;
}

}  // namespace compoly
