#pragma once

// Small finite posets stored as explicit relation matrices, plus an
// isomorphism test. These stay tiny (face posets of 3- and 4-dimensional
// polytopes), so the O(n^3) closures and the backtracking matcher are fine.

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace compoly {

class FinitePoset {
  public:
    FinitePoset() = default;
    explicit FinitePoset(std::size_t n) : n_(n), leq_(n, std::vector<char>(n, 0)) {
        for (std::size_t i = 0; i < n; ++i) leq_[i][i] = 1;
    }

    std::size_t size() const { return n_; }
    bool leq(std::size_t a, std::size_t b) const { return leq_[a][b] != 0; }
    bool less(std::size_t a, std::size_t b) const { return a != b && leq_[a][b]; }

    void add_relation(std::size_t a, std::size_t b) { leq_[a][b] = 1; }

    // transitive closure (call once after all add_relation calls)
    void close() {
        for (std::size_t k = 0; k < n_; ++k)
            for (std::size_t i = 0; i < n_; ++i)
                if (leq_[i][k])
                    for (std::size_t j = 0; j < n_; ++j)
                        if (leq_[k][j]) leq_[i][j] = 1;
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                if (i != j && leq_[i][j] && leq_[j][i])
                    throw std::logic_error("relation is not antisymmetric");
    }

    bool covers(std::size_t a, std::size_t b) const {  // b covers a
        if (!less(a, b)) return false;
        for (std::size_t m = 0; m < n_; ++m)
            if (less(a, m) && less(m, b)) return false;
        return true;
    }

    std::vector<std::pair<std::size_t, std::size_t>> cover_relations() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < n_; ++b)
                if (covers(a, b)) out.emplace_back(a, b);
        return out;
    }

    // length of the longest chain ending at each element (0 for minimal ones)
    std::vector<std::size_t> heights() const {
        std::vector<std::size_t> h(n_, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t a = 0; a < n_; ++a)
                for (std::size_t b = 0; b < n_; ++b)
                    if (less(a, b) && h[b] < h[a] + 1) { h[b] = h[a] + 1; changed = true; }
        }
        return h;
    }

    FinitePoset opposite() const {
        FinitePoset p(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) p.leq_[i][j] = leq_[j][i];
        return p;
    }

    FinitePoset product(const FinitePoset& other) const {
        FinitePoset p(n_ * other.n_);
        for (std::size_t a = 0; a < n_; ++a)
            for (std::size_t b = 0; b < other.n_; ++b)
                for (std::size_t c = 0; c < n_; ++c)
                    for (std::size_t d = 0; d < other.n_; ++d)
                        p.leq_[a * other.n_ + b][c * other.n_ + d] =
                            leq_[a][c] && other.leq_[b][d];
        return p;
    }

  private:
    std::size_t n_ = 0;
    std::vector<std::vector<char>> leq_;
};

namespace detail {

// invariant per element: (height, #below, #above, sorted multiset of
// neighbour invariants) refined to a fixpoint, colour-style. Both posets
// share one code table per round so equal colours mean equal invariants
// across the two, not just within one.
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> poset_colors(
    const FinitePoset& a, const FinitePoset& b) {
    std::vector<std::size_t> ca(a.size()), cb(b.size());
    {
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> codes;
        auto seed = [&](const FinitePoset& p, std::vector<std::size_t>& color) {
            auto h = p.heights();
            for (std::size_t i = 0; i < p.size(); ++i) {
                std::size_t below = 0, above = 0;
                for (std::size_t j = 0; j < p.size(); ++j) {
                    if (p.less(j, i)) ++below;
                    if (p.less(i, j)) ++above;
                }
                auto [it, ok] = codes.emplace(std::make_tuple(h[i], below, above), codes.size());
                color[i] = it->second;
            }
        };
        seed(a, ca);
        seed(b, cb);
    }
    for (std::size_t round = 0; round < a.size(); ++round) {
        std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> codes;
        auto refine = [&](const FinitePoset& p, const std::vector<std::size_t>& color) {
            std::vector<std::size_t> next(p.size());
            for (std::size_t i = 0; i < p.size(); ++i) {
                std::vector<std::size_t> sig;
                for (std::size_t j = 0; j < p.size(); ++j) {
                    if (p.less(j, i)) sig.push_back(2 * color[j]);
                    if (p.less(i, j)) sig.push_back(2 * color[j] + 1);
                }
                std::sort(sig.begin(), sig.end());
                auto [it, ok] =
                    codes.emplace(std::make_pair(color[i], std::move(sig)), codes.size());
                next[i] = it->second;
            }
            return next;
        };
        auto na = refine(a, ca);
        auto nb = refine(b, cb);
        if (na == ca && nb == cb) break;
        ca = std::move(na);
        cb = std::move(nb);
    }
    return {std::move(ca), std::move(cb)};
}

inline bool extend_iso(const FinitePoset& a, const FinitePoset& b,
                       const std::vector<std::size_t>& ca, const std::vector<std::size_t>& cb,
                       std::vector<std::size_t>& map, std::vector<char>& used, std::size_t i) {
    const std::size_t n = a.size();
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
        if (used[j] || ca[i] != cb[j]) continue;
        bool ok = true;
        for (std::size_t k = 0; k < i && ok; ++k)
            ok = (a.leq(i, k) == b.leq(j, map[k])) && (a.leq(k, i) == b.leq(map[k], j));
        if (!ok) continue;
        map[i] = j;
        used[j] = 1;
        if (extend_iso(a, b, ca, cb, map, used, i + 1)) return true;
        used[j] = 0;
    }
    return false;
}

}  // namespace detail

inline bool poset_isomorphic(const FinitePoset& a, const FinitePoset& b) {
    if (a.size() != b.size()) return false;
    auto [ca, cb] = detail::poset_colors(a, b);
    std::vector<std::size_t> ha(ca), hb(cb);
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
    std::vector<std::size_t> map(a.size());
    std::vector<char> used(a.size(), 0);
    return detail::extend_iso(a, b, ca, cb, map, used, 0);
}

}  // namespace compoly
