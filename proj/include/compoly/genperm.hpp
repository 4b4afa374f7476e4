#pragma once

// Generalized permutahedra P_n({z_I}) given by supermodular parameters,
// their q-liftings, the maximal faces P_pi, the pi-liftings P^pi(q) with
// wedge-shaped inequality systems, the lower-hull cell assignment, volumes,
// and face lattices as quotients of the poset of ordered set partitions.
//
// Subsets of [n] are bitmasks (element i <-> bit i-1). All liftings are
// handled in R^n after projecting out the last coordinate, so the q-lifted
// body is { x : q z_I <= x_I <= z_[n] - z_[n]\I }.

#include "compoly/composition.hpp"
#include "compoly/errors.hpp"
#include "compoly/hull.hpp"
#include "compoly/poly.hpp"
#include "compoly/posets.hpp"
#include "compoly/rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace compoly {

// ---------------------------------------------------------------- subsets

inline unsigned popcount_mask(unsigned m) {
    unsigned c = 0;
    while (m) { m &= m - 1; ++c; }
    return c;
}

inline std::string subset_to_string(unsigned mask, unsigned n) {
    std::string s;
    bool wide = n > 9;
    for (unsigned e = 1; e <= n; ++e)
        if (mask >> (e - 1) & 1u) {
            if (wide && !s.empty()) s += ',';
            s += std::to_string(e);
        }
    return s;
}

inline unsigned subset_from_string(const std::string& s, unsigned n) {
    unsigned mask = 0;
    auto put = [&](unsigned long e) {
        if (e < 1 || e > n) throw std::invalid_argument("subset element out of range: " + s);
        mask |= 1u << (e - 1);
    };
    if (s.find(',') != std::string::npos) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) put(std::stoul(tok));
    } else {
        for (char ch : s) {
            if (ch < '1' || ch > '9') throw std::invalid_argument("bad subset key: " + s);
            put(static_cast<unsigned long>(ch - '0'));
        }
    }
    return mask;
}

// ---------------------------------------------------------- SubsetParams

struct SubsetParams {
    unsigned n = 0;
    std::vector<Rational> z;  // indexed by bitmask; z[0] == 0

    SubsetParams() = default;
    explicit SubsetParams(unsigned n_) : n(n_), z(std::size_t(1) << n_, Rational(0)) {
        if (n_ > 16) throw SizeLimitExceeded("ground set capped at 16");
    }

    unsigned full() const { return (1u << n) - 1; }
    const Rational& at(unsigned mask) const { return z[mask]; }
    Rational& at(unsigned mask) { return z[mask]; }

    static SubsetParams from_json(const nlohmann::json& j) {
        SubsetParams p(j.at("n").get<unsigned>());
        for (auto& [key, val] : j.at("z").items())
            p.z[subset_from_string(key, p.n)] = parse_rational(val.get<std::string>());
        if (p.z[0] != 0) throw std::invalid_argument("z of the empty set must be 0");
        return p;
    }

    nlohmann::json to_json() const {
        nlohmann::json zj = nlohmann::json::object();
        for (unsigned m = 1; m <= full(); ++m)
            if (z[m] != 0) zj[subset_to_string(m, n)] = compoly::to_string(z[m]);
        return nlohmann::json{{"n", n}, {"z", zj}};
    }
};

inline bool check_supermodular(const SubsetParams& p) {
    const unsigned f = p.full();
    for (unsigned i = 1; i <= f; ++i)
        for (unsigned j = i + 1; j <= f; ++j)
            if (p.z[i] + p.z[j] > p.z[i | j] + p.z[i & j]) return false;
    return true;
}

// Moebius inversion y_I = sum_{J subset I} (-1)^{|I\J|} z_J and its inverse.
inline SubsetParams y_from_z(SubsetParams p) {
    for (unsigned b = 0; b < p.n; ++b)
        for (unsigned m = 0; m <= p.full(); ++m)
            if (m >> b & 1u) p.z[m] -= p.z[m ^ (1u << b)];
    return p;
}

inline SubsetParams z_from_y(SubsetParams p) {
    for (unsigned b = 0; b < p.n; ++b)
        for (unsigned m = 0; m <= p.full(); ++m)
            if (m >> b & 1u) p.z[m] += p.z[m ^ (1u << b)];
    return p;
}

inline SubsetParams q_lift(const SubsetParams& p, const Rational& q) {
    if (q < 0 || q > 1) throw OutOfRange("q must lie in [0,1]");
    SubsetParams out(p.n + 1);
    const unsigned top = 1u << p.n;
    for (unsigned m = 0; m <= p.full(); ++m) {
        out.z[m] = q * p.z[m];
        out.z[m | top] = p.z[m];
    }
    return out;
}

// Translation by t*(1,...,1): z_I += t|I|. Returns the shift used to make
// z strictly monotone with positive singletons (so P sits in the interior
// of the positive orthant).
inline Rational shift_to_positive(SubsetParams& p) {
    Rational need(0);
    for (unsigned m = 1; m <= p.full(); ++m)
        for (unsigned b = 0; b < p.n; ++b)
            if (!(m >> b & 1u)) need = std::max(need, Rational(p.z[m] - p.z[m | (1u << b)]));
    for (unsigned b = 0; b < p.n; ++b) need = std::max(need, Rational(-p.z[1u << b]));
    Rational t = need + 1;
    for (unsigned m = 1; m <= p.full(); ++m)
        p.z[m] += t * Rational(popcount_mask(m));
    return t;
}

// ------------------------------------------------------ OrderedPartition

struct OrderedPartition {
    unsigned n = 0;
    std::vector<unsigned> blocks;  // bitmasks, disjoint, union = [n]

    OrderedPartition() = default;
    OrderedPartition(unsigned n_, std::vector<unsigned> b) : n(n_), blocks(std::move(b)) {
        unsigned seen = 0;
        for (unsigned m : blocks) {
            if (m == 0 || (m & seen)) throw std::invalid_argument("blocks must be disjoint and nonempty");
            seen |= m;
        }
        if (seen != (1u << n) - 1) throw std::invalid_argument("blocks must cover the ground set");
    }

    std::size_t k() const { return blocks.size(); }

    Composition composition() const {
        std::vector<unsigned> parts;
        for (unsigned m : blocks) parts.push_back(popcount_mask(m));
        return Composition(parts);
    }

    static OrderedPartition parse(const std::string& text, unsigned n) {
        std::vector<unsigned> blocks;
        std::stringstream ss(text);
        std::string tok;
        while (std::getline(ss, tok, '|')) blocks.push_back(subset_from_string(tok, n));
        return OrderedPartition(n, std::move(blocks));
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (i) s += '|';
            s += subset_to_string(blocks[i], n);
        }
        return s;
    }

    bool operator==(const OrderedPartition& o) const { return n == o.n && blocks == o.blocks; }
    bool operator<(const OrderedPartition& o) const { return blocks < o.blocks; }
};

inline void enumerate_partitions_rec(unsigned remaining, unsigned n,
                                     std::vector<unsigned>& acc,
                                     std::vector<OrderedPartition>& out) {
    if (remaining == 0) {
        out.emplace_back(n, acc);
        return;
    }
    // iterate over nonempty subsets of the remaining elements as next block
    for (unsigned s = remaining; s; s = (s - 1) & remaining) {
        acc.push_back(s);
        enumerate_partitions_rec(remaining & ~s, n, acc, out);
        acc.pop_back();
    }
}

inline std::vector<OrderedPartition> enumerate_ordered_partitions(unsigned n) {
    if (n > 6) throw SizeLimitExceeded("ordered partition enumeration capped at n = 6");
    std::vector<OrderedPartition> out;
    std::vector<unsigned> acc;
    enumerate_partitions_rec((1u << n) - 1, n, acc, out);
    return out;
}

// ---------------------------------------------------------------- faces

// Block polytope j of the face P_pi: parameters on the ground set pi_j,
// z'_I = z_{A_{j-1} union I} - z_{A_{j-1}} for I inside pi_j.
struct FaceFactor {
    std::vector<unsigned> elements;  // global elements of the block, increasing
    SubsetParams params;             // on ground set {1..|block|}
};

inline std::vector<FaceFactor> face_of_partition(const SubsetParams& p,
                                                 const OrderedPartition& pi) {
    std::vector<FaceFactor> out;
    unsigned prefix = 0;
    for (unsigned block : pi.blocks) {
        FaceFactor f;
        for (unsigned b = 0; b < p.n; ++b)
            if (block >> b & 1u) f.elements.push_back(b);
        f.params = SubsetParams(static_cast<unsigned>(f.elements.size()));
        for (unsigned local = 1; local < (1u << f.elements.size()); ++local) {
            unsigned global = 0;
            for (std::size_t i = 0; i < f.elements.size(); ++i)
                if (local >> i & 1u) global |= 1u << f.elements[i];
            f.params.z[local] = p.z[prefix | global] - p.z[prefix];
        }
        prefix |= block;
        out.push_back(std::move(f));
    }
    return out;
}

inline std::vector<Point> vertices(const SubsetParams& p) {
    if (p.n > 8) throw SizeLimitExceeded("vertex enumeration capped at n = 8");
    std::vector<unsigned> perm(p.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::set<Point> out;
    do {
        Point x(p.n);
        unsigned prefix = 0;
        for (unsigned b : perm) {
            x[b] = p.z[prefix | (1u << b)] - p.z[prefix];
            prefix |= 1u << b;
        }
        out.insert(std::move(x));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {out.begin(), out.end()};
}

// Vertices of the maximal face P_pi, as points of R^n.
inline std::vector<Point> face_vertices(const SubsetParams& p, const OrderedPartition& pi) {
    auto factors = face_of_partition(p, pi);
    std::vector<Point> acc{Point(p.n, Rational(0))};
    for (const auto& f : factors) {
        auto vs = vertices(f.params);
        std::vector<Point> next;
        for (const auto& base : acc)
            for (const auto& v : vs) {
                Point x = base;
                for (std::size_t i = 0; i < f.elements.size(); ++i) x[f.elements[i]] = v[i];
                next.push_back(std::move(x));
            }
        acc = std::move(next);
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
}

// ------------------------------------------------------------ pi-lifting

struct Inequality {
    std::vector<Rational> a;  // a . x >= b
    Rational b;
};

inline Rational eval_lhs(const Inequality& iq, const Point& x) {
    Rational s = 0;
    for (std::size_t i = 0; i < iq.a.size(); ++i) s += iq.a[i] * x[i];
    return s;
}

inline std::vector<Inequality> pi_lifting_hrep(const SubsetParams& p,
                                               const OrderedPartition& pi,
                                               const Rational& q) {
    const std::size_t k = pi.k();
    std::vector<unsigned> prefixes(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) prefixes[i + 1] = prefixes[i] | pi.blocks[i];
    std::vector<Rational> s(k);  // z_pi^{pi_i}
    for (std::size_t i = 0; i < k; ++i) {
        s[i] = p.z[prefixes[i + 1]] - p.z[prefixes[i]];
        if (s[i] <= 0) throw DegenerateBlock("block parameter z_pi^{pi_i} must be positive");
    }
    auto indicator = [&](unsigned mask, const Rational& c) {
        std::vector<Rational> a(p.n, Rational(0));
        for (unsigned b = 0; b < p.n; ++b)
            if (mask >> b & 1u) a[b] = c;
        return a;
    };
    std::vector<Inequality> out;
    // simplicial chain: q <= x_{pi_1}/s_1 <= ... <= x_{pi_k}/s_k <= 1
    out.push_back({indicator(pi.blocks[0], Rational(1)), q * s[0]});
    for (std::size_t i = 0; i + 1 < k; ++i) {
        Inequality iq{std::vector<Rational>(p.n, Rational(0)), Rational(0)};
        for (unsigned b = 0; b < p.n; ++b) {
            if (pi.blocks[i + 1] >> b & 1u) iq.a[b] = s[i];
            if (pi.blocks[i] >> b & 1u) iq.a[b] = -s[i + 1];
        }
        out.push_back(std::move(iq));
    }
    out.push_back({indicator(pi.blocks[k - 1], Rational(-1)), -s[k - 1]});
    // facial inequalities: for every split pi_i = C u D,
    // x_C / (z_{A_{i-1} u C} - z_{A_{i-1}}) >= x_D / (z_{A_i} - z_{A_{i-1} u C})
    for (std::size_t i = 0; i < k; ++i) {
        unsigned block = pi.blocks[i];
        for (unsigned c = (block - 1) & block; c; c = (c - 1) & block) {
            unsigned d = block & ~c;
            Rational zc = p.z[prefixes[i] | c] - p.z[prefixes[i]];
            Rational zd = p.z[prefixes[i + 1]] - p.z[prefixes[i] | c];
            if (zc <= 0 || zd <= 0) throw DegenerateBlock("facial parameter must be positive");
            Inequality iq{std::vector<Rational>(p.n, Rational(0)), Rational(0)};
            for (unsigned b = 0; b < p.n; ++b) {
                if (c >> b & 1u) iq.a[b] = zd;
                if (d >> b & 1u) iq.a[b] = -zc;
            }
            out.push_back(std::move(iq));
        }
    }
    return out;
}

inline bool satisfies_hrep(const std::vector<Inequality>& sys, const Point& x) {
    for (const auto& iq : sys)
        if (eval_lhs(iq, x) < iq.b) return false;
    return true;
}

inline std::vector<Point> pi_lifting_vertices(const SubsetParams& p,
                                              const OrderedPartition& pi,
                                              const Rational& q) {
    auto base = face_vertices(p, pi);
    std::set<Point> cand;
    unsigned scaled = 0;
    for (std::size_t i = 0; i <= pi.k(); ++i) {
        for (const auto& v : base) {
            Point x = v;
            for (unsigned b = 0; b < p.n; ++b)
                if (scaled >> b & 1u) x[b] *= q;
            cand.insert(std::move(x));
        }
        if (i < pi.k()) scaled |= pi.blocks[i];
    }
    // keep the points where the tight inequalities have full rank
    auto sys = pi_lifting_hrep(p, pi, q);
    std::vector<Point> out;
    for (const auto& x : cand) {
        std::vector<std::vector<Rational>> tight;
        for (const auto& iq : sys)
            if (eval_lhs(iq, x) == iq.b) tight.push_back(iq.a);
        if (matrix_rank(std::move(tight)) == p.n) out.push_back(x);
    }
    return out;
}

// ------------------------------------------------------------ membership

inline bool in_lifted_polytope(const SubsetParams& p, const Rational& q, const Point& x) {
    const unsigned f = p.full();
    for (unsigned m = 1; m <= f; ++m) {
        Rational xm = 0;
        for (unsigned b = 0; b < p.n; ++b)
            if (m >> b & 1u) xm += x[b];
        if (xm < q * p.z[m]) return false;
        if (xm > p.z[f] - p.z[f & ~m]) return false;
    }
    return true;
}

// ----------------------------------------------------------- subdivision

class AmbiguousCell : public std::domain_error {
  public:
    explicit AmbiguousCell(std::vector<OrderedPartition> chains_)
        : std::domain_error("point lies on a cell boundary"), chains(std::move(chains_)) {}
    std::vector<OrderedPartition> chains;
};

namespace detail {
inline void lower_hull_chains(const SubsetParams& p, const std::vector<Rational>& xsum,
                              unsigned cur, std::vector<unsigned>& acc,
                              std::vector<std::vector<unsigned>>& out) {
    const unsigned f = p.full();
    if (cur == f) {
        out.push_back(acc);
        return;
    }
    // minimal slope from v_cur among nested successors
    bool have = false;
    Rational best;
    for (unsigned m = 1; m <= f; ++m) {
        if ((m & cur) != cur || m == cur) continue;
        if (p.z[m] <= p.z[cur]) continue;
        Rational slope = (xsum[m] - xsum[cur]) / (p.z[m] - p.z[cur]);
        if (!have || slope < best) { best = slope; have = true; }
    }
    if (!have) throw DegenerateBlock("z parameters are not strictly increasing");
    for (unsigned m = 1; m <= f; ++m) {
        if ((m & cur) != cur || m == cur) continue;
        if (p.z[m] <= p.z[cur]) continue;
        if ((xsum[m] - xsum[cur]) / (p.z[m] - p.z[cur]) != best) continue;
        acc.push_back(m);
        lower_hull_chains(p, xsum, m, acc, out);
        acc.pop_back();
    }
}
}  // namespace detail

// All cells of the subdivision of P(q) containing x (one if x is generic).
inline std::vector<OrderedPartition> subdivision_cells(const SubsetParams& p,
                                                       const Rational& q, const Point& x) {
    for (const auto& xi : x)
        if (xi <= 0) throw NotInPolytope("point must be strictly positive");
    if (!in_lifted_polytope(p, q, x)) throw NotInPolytope("point is outside P(q)");
    std::vector<Rational> xsum(std::size_t(1) << p.n, Rational(0));
    for (unsigned m = 1; m <= p.full(); ++m)
        for (unsigned b = 0; b < p.n; ++b)
            if (m >> b & 1u) xsum[m] += x[b];
    std::vector<std::vector<unsigned>> chains;
    std::vector<unsigned> acc;
    detail::lower_hull_chains(p, xsum, 0, acc, chains);
    std::set<OrderedPartition> parts;
    for (const auto& ch : chains) {
        std::vector<unsigned> blocks;
        unsigned prev = 0;
        for (unsigned a : ch) {
            blocks.push_back(a & ~prev);
            prev = a;
        }
        parts.insert(OrderedPartition(p.n, std::move(blocks)));
    }
    return {parts.begin(), parts.end()};
}

inline OrderedPartition subdivision_assign(const SubsetParams& p, const Rational& q,
                                           const Point& x) {
    auto cells = subdivision_cells(p, q, x);
    if (cells.size() != 1) throw AmbiguousCell(std::move(cells));
    return cells.front();
}

// ---------------------------------------------------------------- volume

// Lattice-normalized volume of a generalized permutahedron on m elements:
// the Euclidean (m-1)-volume of its projection along one coordinate. Only
// needed for blocks of size <= 4 (projection dimension <= 3).
inline Rational normalized_face_volume(const SubsetParams& p) {
    if (p.n <= 1) return 1;
    std::vector<Point> proj;
    for (const auto& v : vertices(p)) proj.emplace_back(v.begin(), v.end() - 1);
    return hull_volume(proj);
}

// Vol_n(P^pi(q)) as a polynomial in q: z_pi^{pi_1} ... z_pi^{pi_k} times
// the normalized volume of the face P_pi times g_{c(pi)}.
inline Poly pi_lifting_volume_poly(const SubsetParams& p, const OrderedPartition& pi) {
    Rational scale = 1;
    unsigned prefix = 0;
    for (unsigned block : pi.blocks) {
        Rational s = p.z[prefix | block] - p.z[prefix];
        if (s <= 0) throw DegenerateBlock("block parameter z_pi^{pi_i} must be positive");
        scale *= s;
        prefix |= block;
    }
    for (const auto& f : face_of_partition(p, pi)) scale *= normalized_face_volume(f.params);
    return g_closed_form(pi.composition()) * Poly{scale};
}

inline Rational pi_lifting_volume(const SubsetParams& p, const OrderedPartition& pi,
                                  const Rational& q) {
    return pi_lifting_volume_poly(p, pi).eval(q);
}

// ----------------------------------------------------------- face lattice

struct FaceLattice {
    std::vector<std::vector<OrderedPartition>> classes;  // each sorted
    std::vector<std::size_t> dims;                       // per class
    FinitePoset poset;                                   // order by inclusion of faces

    std::vector<std::size_t> f_vector() const {
        std::vector<std::size_t> f;
        for (auto d : dims) {
            if (d >= f.size()) f.resize(d + 1, 0);
            ++f[d];
        }
        return f;
    }
};

// The key identifying a maximal face: its Minkowski summand decomposition
// S -> sum of y_I over { I : I cap pi_{j(I)} = S } with j(I) the last block
// index that I meets.
inline std::map<unsigned, Rational> face_key(const SubsetParams& y, const OrderedPartition& pi) {
    std::map<unsigned, Rational> key;
    for (unsigned m = 1; m <= y.full(); ++m) {
        if (y.z[m] == 0) continue;
        unsigned s = 0;
        for (std::size_t j = pi.k(); j-- > 0;)
            if (m & pi.blocks[j]) { s = m & pi.blocks[j]; break; }
        key[s] += y.z[m];
    }
    for (auto it = key.begin(); it != key.end();)
        it = it->second == 0 ? key.erase(it) : std::next(it);
    return key;
}

inline FaceLattice face_lattice(const SubsetParams& p) {
    if (p.n > 5) throw SizeLimitExceeded("face lattice enumeration capped at n = 5");
    SubsetParams y = y_from_z(p);
    auto parts = enumerate_ordered_partitions(p.n);

    std::map<std::map<unsigned, Rational>, std::size_t> index;
    FaceLattice out;
    std::vector<std::size_t> cls(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        auto key = face_key(y, parts[i]);
        auto [it, fresh] = index.emplace(std::move(key), index.size());
        if (fresh) out.classes.emplace_back();
        cls[i] = it->second;
        out.classes[it->second].push_back(parts[i]);
    }
    for (auto& c : out.classes) std::sort(c.begin(), c.end());

    std::map<std::vector<unsigned>, std::size_t> by_blocks;
    for (std::size_t i = 0; i < parts.size(); ++i) by_blocks[parts[i].blocks] = i;

    out.poset = FinitePoset(out.classes.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        // merging two adjacent blocks coarsens pi, giving a (weakly) larger face
        for (std::size_t j = 0; j + 1 < parts[i].k(); ++j) {
            std::vector<unsigned> merged = parts[i].blocks;
            merged[j] |= merged[j + 1];
            merged.erase(merged.begin() + static_cast<long>(j) + 1);
            out.poset.add_relation(cls[i], cls[by_blocks.at(merged)]);
        }
    }
    out.poset.close();
    out.dims = out.poset.heights();
    return out;
}

// Face poset of a polytope from its V- and H-representations: faces are the
// closed intersections of facet vertex-sets, ordered by inclusion. Used as a
// geometric oracle for the product structure of pi-liftings.
inline FinitePoset face_poset_from_hrep(const std::vector<Point>& verts,
                                        const std::vector<Inequality>& sys) {
    std::set<std::set<std::size_t>> faces;
    std::set<std::size_t> all;
    for (std::size_t i = 0; i < verts.size(); ++i) all.insert(i);
    faces.insert(all);
    for (const auto& iq : sys) {
        std::set<std::size_t> fc;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (eval_lhs(iq, verts[i]) == iq.b) fc.insert(i);
        if (!fc.empty()) faces.insert(fc);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::set<std::size_t>> cur(faces.begin(), faces.end());
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                std::set<std::size_t> meet;
                std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(),
                                      cur[j].end(), std::inserter(meet, meet.begin()));
                if (!meet.empty() && faces.insert(meet).second) grew = true;
            }
    }
    std::vector<std::set<std::size_t>> elems(faces.begin(), faces.end());
    FinitePoset poset(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && std::includes(elems[j].begin(), elems[j].end(), elems[i].begin(),
                                        elems[i].end()))
                poset.add_relation(i, j);
    poset.close();
    return poset;
}

}  // namespace compoly
