#pragma once

// The poset P_c: a spine chain p_0 < p_1 < ... < p_k with a chain of c_i - 1
// extra elements hanging below each p_i. Linear extensions are counted
// bucketed by the height of p_0, which ties g_c(q) to the Bernstein-basis
// expansion and to slices of the order polytope O(P_c).

#include "compoly/composition.hpp"
#include "compoly/errors.hpp"
#include "compoly/poly.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace compoly {

class ChainPoset {
public:
    explicit ChainPoset(const Composition& c) : comp_(c) {
        const unsigned k = c.length();
        spine_.resize(k + 1);
        tails_.resize(k);
        unsigned next = 0;
        for (unsigned i = 0; i <= k; ++i) spine_[i] = next++;
        for (unsigned i = 0; i < k; ++i)
            for (unsigned t = 0; t + 1 < c.parts()[i]; ++t) tails_[i].push_back(next++);
        count_ = next;  // n + 1 elements

        covers_.clear();
        for (unsigned i = 0; i < k; ++i) {
            covers_.emplace_back(spine_[i], spine_[i + 1]);
            const auto& tail = tails_[i];
            for (std::size_t t = 0; t + 1 < tail.size(); ++t)
                covers_.emplace_back(tail[t], tail[t + 1]);
            if (!tail.empty()) covers_.emplace_back(tail.back(), spine_[i + 1]);
        }

        // lower_[e] = bitmask of elements strictly below e
        lower_.assign(count_, 0);
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto [a, b] : covers_) {
                std::uint32_t want = lower_[b] | lower_[a] | (1u << a);
                if (want != lower_[b]) { lower_[b] = want; changed = true; }
            }
        }
    }

    const Composition& composition() const { return comp_; }
    unsigned element_count() const { return count_; }
    unsigned p0() const { return spine_[0]; }
    const std::vector<std::pair<unsigned, unsigned>>& covers() const { return covers_; }

    bool less(unsigned a, unsigned b) const { return (lower_[b] >> a) & 1u; }

    bool is_down_set(std::uint32_t mask) const {
        for (unsigned e = 0; e < count_; ++e)
            if ((mask >> e) & 1u)
                if ((lower_[e] & mask) != lower_[e]) return false;
        return true;
    }

    // Element e can be appended to the prefix downset `mask`.
    bool addable(std::uint32_t mask, unsigned e) const {
        return !((mask >> e) & 1u) && (lower_[e] & mask) == lower_[e];
    }

private:
    Composition comp_;
    unsigned count_ = 0;
    std::vector<unsigned> spine_;
    std::vector<std::vector<unsigned>> tails_;
    std::vector<std::pair<unsigned, unsigned>> covers_;
    std::vector<std::uint32_t> lower_;
};

inline ChainPoset build_poset(const Composition& c) { return ChainPoset(c); }

// N_j (1-indexed) = number of linear extensions in which p_0 is the j-th
// smallest element. Entries beyond n+1-k are structurally zero.
struct ExtensionProfile {
    std::vector<Int> N;  // N[j-1] = N_j, j = 1..n+1

    Int total() const {
        Int t = 0;
        for (const auto& x : N) t += x;
        return t;
    }
};

// Dynamic programming over downset states: W(D) counts the linear-extension
// prefixes realizing downset D, Z(D) the completions from D. Then
// N_j = sum over |D| = j-1 with p_0 addable of W(D) * Z(D + p_0).
inline ExtensionProfile count_extensions_by_height(const ChainPoset& P,
                                                   unsigned size_limit = 16) {
    const unsigned m = P.element_count();
    if (m > size_limit)
        throw SizeLimitExceeded("poset has " + std::to_string(m) + " elements (limit " +
                                std::to_string(size_limit) + ")");
    // enumerate downsets
    std::vector<std::uint32_t> downsets;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
        if (P.is_down_set(mask)) downsets.push_back(mask);

    std::unordered_map<std::uint32_t, Int> W, Z;
    for (auto d : downsets) { W[d] = 0; Z[d] = 0; }
    W[0] = 1;
    for (auto d : downsets)  // masks ascend, so all subsets come first
        for (unsigned e = 0; e < m; ++e)
            if (P.addable(d, e)) W[d | (1u << e)] += W[d];
    Z[(1u << m) - 1] = 1;
    for (auto it = downsets.rbegin(); it != downsets.rend(); ++it)
        for (unsigned e = 0; e < m; ++e)
            if (P.addable(*it, e)) Z[*it] += Z[*it | (1u << e)];

    ExtensionProfile prof;
    prof.N.assign(m, 0);
    const std::uint32_t p0bit = 1u << P.p0();
    for (auto d : downsets) {
        if (d & p0bit) continue;
        if (!P.addable(d, P.p0())) continue;
        unsigned j = static_cast<unsigned>(__builtin_popcount(d)) + 1;
        prof.N[j - 1] += W[d] * Z[d | p0bit];
    }
    return prof;
}

// g_c(q) = (c_1-1)!...(c_k-1)!/n! * sum_i N_{i+1} C(n,i) q^i (1-q)^{n-i}
inline bool bernstein_identity_check(const Composition& c, unsigned size_limit = 16) {
    ExtensionProfile prof = count_extensions_by_height(build_poset(c), size_limit);
    const unsigned n = c.size();
    Int tails = 1;
    for (unsigned p : c.parts()) tails *= factorial(p - 1);
    Poly q = Poly::monomial(Rational(1), 1);
    Poly onemq = Poly::one() - q;
    Poly sum;
    Poly qpow = Poly::one();
    std::vector<Poly> onemq_pows(n + 1);
    onemq_pows[0] = Poly::one();
    for (unsigned i = 1; i <= n; ++i) onemq_pows[i] = onemq_pows[i - 1] * onemq;
    for (unsigned i = 0; i <= n; ++i) {
        sum = sum + qpow * onemq_pows[n - i] * Rational(prof.N[i] * binomial(n, i));
        qpow = qpow * q;
    }
    return g_closed_form(c) == sum * Rational(tails, factorial(n));
}

// Vol(O(P_c) intersected with {x_{p_0} = q}) = g_c(q) / prod (c_i - 1)!
inline Rational slice_volume(const Composition& c, const Rational& q) {
    if (q < 0 || q > 1) throw OutOfRange("slice parameter must lie in [0, 1]");
    Int tails = 1;
    for (unsigned p : c.parts()) tails *= factorial(p - 1);
    return g_closed_form(c).eval(q) / Rational(tails);
}

inline bool logconcavity_N_check(const ChainPoset& P, unsigned size_limit = 16) {
    ExtensionProfile prof = count_extensions_by_height(P, size_limit);
    for (std::size_t j = 1; j + 1 < prof.N.size(); ++j)
        if (prof.N[j] * prof.N[j] < prof.N[j - 1] * prof.N[j + 1]) return false;
    return true;
}

}  // namespace compoly
