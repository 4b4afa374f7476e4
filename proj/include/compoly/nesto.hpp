#pragma once

// Building sets, nested sets / B-forests, painted B-forests with their six
// poset moves, and the nestohedron / nestomultiplihedron parameters. The
// forest posets are cross-checked against the face lattices of the polytopes.
//
// A forest is stored as its nested set: the sorted list of down-set unions
// (bitmasks), one per node. The node owning element e is the smallest member
// containing e; the node label is hat(N) = N minus the union of its children.

#include "compoly/errors.hpp"
#include "compoly/genperm.hpp"
#include "compoly/posets.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace compoly {

// ------------------------------------------------------------ BuildingSet

struct BuildingSet {
    unsigned n = 0;
    std::vector<unsigned> members;           // sorted bitmasks, nonempty
    std::vector<unsigned> completion_added;  // what the closure step inserted

    std::vector<unsigned> maximal() const {
        std::vector<unsigned> out;
        for (unsigned m : members) {
            bool top = true;
            for (unsigned o : members)
                if (o != m && (o & m) == m) { top = false; break; }
            if (top) out.push_back(m);
        }
        return out;
    }

    bool contains(unsigned m) const {
        return std::binary_search(members.begin(), members.end(), m);
    }

    static BuildingSet from_json(const nlohmann::json& j) {
        std::vector<unsigned> mem;
        unsigned n = j.at("n").get<unsigned>();
        for (const auto& s : j.at("members")) mem.push_back(subset_from_string(s.get<std::string>(), n));
        return make_building_set(n, std::move(mem));
    }

    nlohmann::json to_json() const {
        nlohmann::json mem = nlohmann::json::array();
        for (unsigned m : members) mem.push_back(subset_to_string(m, n));
        return nlohmann::json{{"n", n}, {"members", mem}};
    }

    // Completes an arbitrary family to a building set: adds all singletons
    // and closes under unions of intersecting members, recording additions.
    static BuildingSet make_building_set(unsigned n, std::vector<unsigned> family) {
        if (n > 16) throw SizeLimitExceeded("ground set capped at 16");
        std::set<unsigned> mem(family.begin(), family.end());
        mem.erase(0u);
        std::set<unsigned> added;
        for (unsigned e = 0; e < n; ++e)
            if (mem.insert(1u << e).second) added.insert(1u << e);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<unsigned> cur(mem.begin(), mem.end());
            for (unsigned a : cur)
                for (unsigned b : cur)
                    if ((a & b) && mem.insert(a | b).second) {
                        added.insert(a | b);
                        grew = true;
                    }
        }
        BuildingSet out;
        out.n = n;
        out.members.assign(mem.begin(), mem.end());
        out.completion_added.assign(added.begin(), added.end());
        return out;
    }
};

inline BuildingSet graph_building_set(const std::vector<std::pair<unsigned, unsigned>>& edges,
                                      unsigned n) {
    if (n > 16) throw SizeLimitExceeded("ground set capped at 16");
    std::vector<unsigned> adj(n, 0);
    for (auto [a, b] : edges) {
        if (a < 1 || a > n || b < 1 || b > n || a == b)
            throw std::invalid_argument("bad edge");
        adj[a - 1] |= 1u << (b - 1);
        adj[b - 1] |= 1u << (a - 1);
    }
    std::vector<unsigned> mem;
    for (unsigned m = 1; m < (1u << n); ++m) {
        // connectivity of the induced subgraph by mask growth
        unsigned start = m & (~m + 1);
        unsigned reach = start, prev = 0;
        while (reach != prev) {
            prev = reach;
            for (unsigned b = 0; b < n; ++b)
                if (reach >> b & 1u) reach |= adj[b] & m;
        }
        if (reach == m) mem.push_back(m);
    }
    BuildingSet out;
    out.n = n;
    out.members = std::move(mem);
    return out;
}

inline std::vector<std::pair<unsigned, unsigned>> parse_edges(const std::string& text) {
    std::vector<std::pair<unsigned, unsigned>> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("edge must look like 1-2");
        out.emplace_back(std::stoul(tok.substr(0, dash)), std::stoul(tok.substr(dash + 1)));
    }
    return out;
}

// ---------------------------------------------------------------- forests

struct BForest {
    std::vector<unsigned> nested;  // sorted down-set unions, includes B_max

    bool operator==(const BForest& o) const { return nested == o.nested; }
    bool operator<(const BForest& o) const { return nested < o.nested; }

    // index of the parent node, or npos for roots
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t parent(std::size_t i) const {
        std::size_t best = npos;
        for (std::size_t j = 0; j < nested.size(); ++j) {
            if (j == i) continue;
            if ((nested[i] & nested[j]) != nested[i]) continue;
            if (best == npos || (nested[j] & nested[best]) == nested[j]) best = j;
        }
        return best;
    }

    unsigned label(std::size_t i) const {  // hat(N): elements owned by node i
        unsigned below = 0;
        for (std::size_t j = 0; j < nested.size(); ++j)
            if (j != i && (nested[j] & nested[i]) == nested[j]) below |= nested[j];
        return nested[i] & ~below;
    }
};

namespace detail {

inline bool laminar_ok(unsigned a, unsigned b) {
    unsigned c = a & b;
    return c == 0 || c == a || c == b;
}

// checks (N2): no union of >= 2 pairwise incomparable members lies in B
inline bool antichain_unions_ok(const BuildingSet& bs, const std::vector<unsigned>& fam,
                                std::size_t start, unsigned uni, unsigned count) {
    if (count >= 2 && bs.contains(uni)) return false;
    for (std::size_t i = start; i < fam.size(); ++i) {
        if (uni & fam[i]) continue;  // laminar: disjoint <=> incomparable here
        if (!antichain_unions_ok(bs, fam, i + 1, uni | fam[i], count + 1)) return false;
    }
    return true;
}

inline void nested_sets_rec(const BuildingSet& bs, const std::vector<unsigned>& pool,
                            std::size_t i, std::vector<unsigned>& acc,
                            const std::vector<unsigned>& maxes, std::vector<BForest>& out) {
    if (i == pool.size()) {
        std::vector<unsigned> fam = acc;
        fam.insert(fam.end(), maxes.begin(), maxes.end());
        std::sort(fam.begin(), fam.end());
        if (antichain_unions_ok(bs, fam, 0, 0, 0)) out.push_back(BForest{std::move(fam)});
        return;
    }
    nested_sets_rec(bs, pool, i + 1, acc, maxes, out);
    for (unsigned prev : acc)
        if (!laminar_ok(prev, pool[i])) return;
    acc.push_back(pool[i]);
    nested_sets_rec(bs, pool, i + 1, acc, maxes, out);
    acc.pop_back();
}

}  // namespace detail

inline std::vector<BForest> enumerate_bforests(const BuildingSet& bs) {
    if (bs.n > 5) throw SizeLimitExceeded("forest enumeration capped at n = 5");
    auto maxes = bs.maximal();
    std::vector<unsigned> pool;
    for (unsigned m : bs.members)
        if (std::find(maxes.begin(), maxes.end(), m) == maxes.end()) pool.push_back(m);
    std::vector<BForest> out;
    std::vector<unsigned> acc;
    detail::nested_sets_rec(bs, pool, 0, acc, maxes, out);
    std::sort(out.begin(), out.end());
    return out;
}

// --------------------------------------------------------- painted forests

enum Color : int { WHITE = 0, GREY = 1, BLACK = 2 };

struct PaintedForest {
    BForest forest;
    std::vector<int> color;  // aligned with forest.nested

    bool operator==(const PaintedForest& o) const {
        return forest == o.forest && color == o.color;
    }
    bool operator<(const PaintedForest& o) const {
        return std::tie(forest, color) < std::tie(o.forest, o.color);
    }
};

// white set a down-set, grey set an antichain, white + grey a down-set
inline bool painted_valid(const PaintedForest& pf) {
    const auto& ns = pf.forest.nested;
    for (std::size_t i = 0; i < ns.size(); ++i)
        for (std::size_t j = 0; j < ns.size(); ++j) {
            if (i == j || (ns[i] & ns[j]) != ns[i]) continue;  // need ns[i] < ns[j]
            if (pf.color[j] == WHITE && pf.color[i] != WHITE) return false;
            if (pf.color[j] == GREY && pf.color[i] == GREY) return false;
            if (pf.color[j] == GREY && pf.color[i] == BLACK) return false;
        }
    return true;
}

inline std::vector<PaintedForest> enumerate_painted(const BuildingSet& bs) {
    if (bs.n > 4) throw SizeLimitExceeded("painted enumeration capped at n = 4");
    std::vector<PaintedForest> out;
    for (const auto& f : enumerate_bforests(bs)) {
        std::vector<int> c(f.nested.size(), WHITE);
        while (true) {
            PaintedForest pf{f, c};
            if (painted_valid(pf)) out.push_back(std::move(pf));
            std::size_t i = 0;
            while (i < c.size() && c[i] == BLACK) c[i++] = WHITE;
            if (i == c.size()) break;
            ++c[i];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline PaintedForest erase_nodes(const PaintedForest& pf, const std::set<std::size_t>& gone,
                                 std::size_t recolor_idx, int new_color) {
    PaintedForest out;
    for (std::size_t i = 0; i < pf.forest.nested.size(); ++i) {
        if (gone.count(i)) continue;
        out.forest.nested.push_back(pf.forest.nested[i]);
        out.color.push_back(i == recolor_idx ? new_color : pf.color[i]);
    }
    return out;
}

}  // namespace detail

// All painted forests one downward move below pf: contracting a BB, WW, or
// GW edge; contracting a BG bunch; recoloring a black node with only white
// children, or a white node with a black parent, to grey.
inline std::vector<PaintedForest> painted_covers(const PaintedForest& pf) {
    const auto& ns = pf.forest.nested;
    std::set<PaintedForest> out;
    auto emit = [&](PaintedForest next) {
        if (painted_valid(next)) out.insert(std::move(next));
    };
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::size_t par = pf.forest.parent(i);
        // single-edge contractions (child i into parent)
        if (par != BForest::npos) {
            int ci = pf.color[i], cp = pf.color[par];
            if ((ci == BLACK && cp == BLACK) || (ci == WHITE && cp == WHITE) ||
                (ci == WHITE && cp == GREY))
                emit(detail::erase_nodes(pf, {i}, par, cp));
        }
        // BG bunch: contract all grey children of a black node at once
        if (pf.color[i] == BLACK) {
            std::set<std::size_t> greys;
            for (std::size_t j = 0; j < ns.size(); ++j)
                if (pf.forest.parent(j) == i && pf.color[j] == GREY) greys.insert(j);
            if (!greys.empty()) emit(detail::erase_nodes(pf, greys, i, GREY));
        }
        // recolorings black -> grey (needs all-white children) and
        // white -> grey (needs a black or absent parent, and no white above);
        // the validity filter enforces those side conditions, including the
        // root and leaf cases
        if (pf.color[i] != GREY) emit(detail::erase_nodes(pf, {}, i, GREY));
    }
    return {out.begin(), out.end()};
}

// ------------------------------------------------------------- polytopes

inline SubsetParams nestohedron_params(const BuildingSet& bs) {
    SubsetParams p(bs.n);
    for (unsigned m = 1; m <= p.full(); ++m) {
        Int count = 0;
        for (unsigned b : bs.members)
            if ((b & m) == b) ++count;
        p.z[m] = Rational(count);
    }
    return p;
}

inline SubsetParams nestomultiplihedron_params(const BuildingSet& bs) {
    SubsetParams y(bs.n + 1);
    const unsigned top = 1u << bs.n;
    for (unsigned b : bs.members) {
        y.z[b] += 1;
        y.z[b | top] += 1;
    }
    return z_from_y(std::move(y));
}

// ----------------------------------------------------------------- posets

inline FinitePoset bforest_poset(const std::vector<BForest>& forests) {
    FinitePoset p(forests.size());
    for (std::size_t i = 0; i < forests.size(); ++i)
        for (std::size_t j = 0; j < forests.size(); ++j)
            if (i != j && std::includes(forests[j].nested.begin(), forests[j].nested.end(),
                                        forests[i].nested.begin(), forests[i].nested.end()))
                p.add_relation(i, j);
    p.close();
    return p;
}

inline FinitePoset painted_poset(const std::vector<PaintedForest>& all) {
    std::map<PaintedForest, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
    FinitePoset p(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        for (const auto& below : painted_covers(all[i]))
            p.add_relation(index.at(below), i);
    p.close();
    return p;
}

inline bool face_poset_crosscheck(const BuildingSet& bs) {
    if (bs.n > 4) throw SizeLimitExceeded("cross-check capped at n = 4");
    auto forests = enumerate_bforests(bs);
    if (!poset_isomorphic(bforest_poset(forests),
                          face_lattice(nestohedron_params(bs)).poset.opposite()))
        return false;
    auto painted = enumerate_painted(bs);
    return poset_isomorphic(painted_poset(painted),
                            face_lattice(nestomultiplihedron_params(bs)).poset.opposite());
}

// ------------------------------------------------- faces <-> painted forests

// The painted forest labeling the face of the nestomultiplihedron maximal in
// direction pi' (an ordered partition of [n+1]).
inline PaintedForest partition_to_painted(const BuildingSet& bs, const OrderedPartition& pip) {
    if (pip.n != bs.n + 1) throw std::invalid_argument("partition must live on [n+1]");
    const unsigned liftbit = 1u << bs.n;
    // remove n+1; record 2k (twice the effective block index of n+1)
    std::vector<unsigned> blocks;
    int twok = 0;
    for (unsigned b : pip.blocks) {
        unsigned rest = b & ~liftbit;
        if (b & liftbit) twok = rest ? 2 * static_cast<int>(blocks.size()) + 2
                                     : 2 * static_cast<int>(blocks.size()) + 1;
        if (rest) blocks.push_back(rest);
    }
    auto j_of = [&](unsigned m) {
        for (std::size_t j = blocks.size(); j-- > 0;)
            if (m & blocks[j]) return static_cast<int>(j) + 1;
        return 0;
    };
    PaintedForest pf;
    for (unsigned m : bs.members) {
        bool in_nested = true;
        for (unsigned sup : bs.members)
            if (sup != m && (sup & m) == m && j_of(sup) == j_of(m)) { in_nested = false; break; }
        if (in_nested) pf.forest.nested.push_back(m);
    }
    std::sort(pf.forest.nested.begin(), pf.forest.nested.end());
    for (unsigned m : pf.forest.nested) {
        int twoj = 2 * j_of(m);
        pf.color.push_back(twoj < twok ? WHITE : twoj == twok ? GREY : BLACK);
    }
    return pf;
}

// A labeling of the nodes, strictly increasing up the forest, with whites
// first, greys (and n+1) sharing one label, then blacks; returns the ordered
// partition of [n+1] it induces.
inline OrderedPartition painted_to_partition(const BuildingSet& bs, const PaintedForest& pf) {
    const auto& ns = pf.forest.nested;
    // level = longest monochromatic chain strictly below each node, computed
    // in order of increasing mask size
    std::vector<std::size_t> level(ns.size(), 0);
    std::vector<std::size_t> order(ns.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return popcount_mask(ns[a]) < popcount_mask(ns[b]);
    });
    for (std::size_t oi : order)
        for (std::size_t j = 0; j < ns.size(); ++j)
            if (j != oi && pf.color[j] == pf.color[oi] && (ns[j] & ns[oi]) == ns[j])
                level[oi] = std::max(level[oi], level[j] + 1);
    std::size_t w = 0, blk = 0;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        if (pf.color[i] == WHITE) w = std::max(w, level[i] + 1);
        if (pf.color[i] == BLACK) blk = std::max(blk, level[i] + 1);
    }
    const std::size_t k = w + 1, m = k + blk;
    std::vector<unsigned> blocks(m, 0);
    blocks[k - 1] |= 1u << bs.n;  // element n+1 gets label k
    for (std::size_t i = 0; i < ns.size(); ++i) {
        std::size_t lab = pf.color[i] == WHITE ? level[i] + 1
                        : pf.color[i] == GREY  ? k
                                               : k + level[i] + 1;
        blocks[lab - 1] |= pf.forest.label(i);
    }
    return OrderedPartition(bs.n + 1, std::move(blocks));
}

// ------------------------------------------------------------------ JSON

inline nlohmann::json forest_to_json(const BuildingSet& bs, const BForest& f,
                                     const std::vector<int>* colors = nullptr) {
    auto node_json = [&](std::size_t i, auto&& self) -> nlohmann::json {
        nlohmann::json node{{"label", subset_to_string(f.label(i), bs.n)}};
        if (colors) node["color"] = (*colors)[i] == WHITE ? "white"
                                  : (*colors)[i] == GREY  ? "grey"
                                                          : "black";
        nlohmann::json kids = nlohmann::json::array();
        for (std::size_t j = 0; j < f.nested.size(); ++j)
            if (f.parent(j) == i) kids.push_back(self(j, self));
        node["children"] = std::move(kids);
        return node;
    };
    nlohmann::json roots = nlohmann::json::array();
    for (std::size_t i = 0; i < f.nested.size(); ++i)
        if (f.parent(i) == BForest::npos) roots.push_back(node_json(i, node_json));
    return roots;
}

}  // namespace compoly
