#include <doctest.h>

#include <compoly/genperm.hpp>
#include <compoly/nesto.hpp>

#include <random>

using namespace compoly;

namespace {

// standard permutahedron: z_I = 1 + 2 + ... + |I|
SubsetParams permutahedron(unsigned n) {
    SubsetParams p(n);
    for (unsigned m = 1; m <= p.full(); ++m) {
        unsigned c = popcount_mask(m);
        p.z[m] = Rational(c * (c + 1) / 2);
    }
    return p;
}

// associahedron K(4) from the intervals of [3]
SubsetParams kl4() {
    return nestohedron_params(graph_building_set({{1, 2}, {2, 3}}, 3));
}

SubsetParams random_supermodular(std::mt19937& rng, unsigned n) {
    std::uniform_int_distribution<int> d(0, 4);
    SubsetParams y(n);
    for (unsigned m = 1; m <= y.full(); ++m)
        y.z[m] = Rational(d(rng)) + (popcount_mask(m) == 1 ? 1 : 0);
    return z_from_y(std::move(y));
}

Point pt(std::initializer_list<int> xs) {
    Point p;
    for (int x : xs) p.emplace_back(x);
    return p;
}

Point barycenter(const std::vector<Point>& pts) {
    Point b(pts[0].size(), Rational(0));
    for (const auto& p : pts)
        for (std::size_t i = 0; i < b.size(); ++i) b[i] += p[i];
    for (auto& c : b) c /= Rational(pts.size());
    return b;
}

std::vector<Point> lifted_vertices(const SubsetParams& p, const Rational& q) {
    std::vector<Point> out;
    for (const auto& v : vertices(q_lift(p, q))) out.emplace_back(v.begin(), v.end() - 1);
    return out;
}

FinitePoset simplex_poset(std::size_t verts) {  // nonempty subsets by inclusion
    FinitePoset p((std::size_t(1) << verts) - 1);
    for (unsigned a = 1; a < (1u << verts); ++a)
        for (unsigned b = 1; b < (1u << verts); ++b)
            if ((a & b) == a) p.add_relation(a - 1, b - 1);
    p.close();
    return p;
}

}  // namespace

TEST_CASE("subset keys and params JSON") {
    CHECK(subset_from_string("12", 3) == 0b011);
    CHECK(subset_to_string(0b101, 3) == "13");
    CHECK(subset_from_string("1,11", 11) == ((1u << 0) | (1u << 10)));

    auto j = nlohmann::json::parse(
        R"({"n":3,"z":{"1":"1","2":"1","3":"1","12":"3","13":"2","23":"3","123":"6"}})");
    auto p = SubsetParams::from_json(j);
    CHECK(p.z == kl4().z);
    CHECK(SubsetParams::from_json(p.to_json()).z == p.z);
}

TEST_CASE("supermodularity checks") {
    SubsetParams simplex(2);
    simplex.z[0b11] = 1;
    CHECK(check_supermodular(simplex));

    SubsetParams bad(2);
    bad.z[0b01] = bad.z[0b10] = bad.z[0b11] = 1;
    CHECK_FALSE(check_supermodular(bad));

    for (unsigned n = 1; n <= 5; ++n) CHECK(check_supermodular(permutahedron(n)));
    CHECK(check_supermodular(kl4()));
}

TEST_CASE("Moebius transforms") {
    for (unsigned n = 2; n <= 4; ++n) {
        auto y = y_from_z(permutahedron(n));
        // z_I = |I|(|I|+1)/2 is the sum of all edge segments plus all vertices
        for (unsigned m = 1; m <= y.full(); ++m)
            CHECK(y.z[m] == (popcount_mask(m) <= 2 ? 1 : 0));
    }
    auto y = y_from_z(kl4());
    for (unsigned m = 1; m <= 7; ++m) {
        bool interval = (m == 0b001 || m == 0b010 || m == 0b100 || m == 0b011 ||
                         m == 0b110 || m == 0b111);
        CHECK(y.z[m] == (interval ? 1 : 0));
    }
    CHECK(kl4().z[0b111] == 6);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-5, 5);
    SubsetParams r(4);
    for (unsigned m = 1; m <= r.full(); ++m) r.z[m] = ratio(d(rng), 1 + (d(rng) & 3));
    auto rt = y_from_z(z_from_y(r));
    CHECK(rt.z == r.z);
}

TEST_CASE("q-lifting parameters") {
    auto p = permutahedron(3);
    auto l1 = q_lift(p, 1), l0 = q_lift(p, 0);
    for (unsigned m = 1; m <= p.full(); ++m) {
        CHECK(l1.z[m] == p.z[m]);
        CHECK(l1.z[m | 8] == p.z[m]);
        CHECK(l0.z[m] == 0);
        CHECK(l0.z[m | 8] == p.z[m]);
    }
    CHECK_THROWS_AS(q_lift(p, Rational(3, 2)), OutOfRange);

    // Minkowski form of the lift: y' = q y on I, (1-q) y on I u {n+1}
    Rational q(2, 5);
    auto y = y_from_z(p);
    auto yl = y_from_z(q_lift(p, q));
    for (unsigned m = 1; m <= p.full(); ++m) {
        CHECK(yl.z[m] == q * y.z[m]);
        CHECK(yl.z[m | 8] == (1 - q) * y.z[m]);
    }
    CHECK(yl.z[8] == 0);

    // z-additivity: z(q) = q z(1) + (1-q) z(0)
    auto lq = q_lift(p, q);
    for (unsigned m = 1; m <= lq.full(); ++m)
        CHECK(lq.z[m] == q * l1.z[m] + (1 - q) * l0.z[m]);
}

TEST_CASE("q-lifting preserves supermodularity on random instances") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        unsigned n = 2 + trial % 3;
        auto p = random_supermodular(rng, n);
        REQUIRE(check_supermodular(p));
        CHECK(check_supermodular(q_lift(p, Rational(1, 2))));
        CHECK(check_supermodular(q_lift(p, Rational(trial % 4, 7))));
    }
}

TEST_CASE("vertices by the greedy construction") {
    auto vs = vertices(permutahedron(3));
    CHECK(vs.size() == 6);
    for (const auto& v : vs) {
        Point s = v;
        std::sort(s.begin(), s.end());
        CHECK(s == pt({1, 2, 3}));
    }

    SubsetParams simplex(2);
    simplex.z[0b11] = 1;
    auto sv = vertices(simplex);
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == pt({0, 1}));
    CHECK(sv[1] == pt({1, 0}));

    auto kv = vertices(kl4());
    CHECK(kv.size() == 5);
    CHECK(std::find(kv.begin(), kv.end(), pt({1, 4, 1})) != kv.end());
}

TEST_CASE("faces of ordered partitions") {
    auto k4 = kl4();
    auto fv = face_vertices(k4, OrderedPartition::parse("1|3|2", 3));
    REQUIRE(fv.size() == 1);
    CHECK(fv[0] == pt({1, 4, 1}));

    // single block: the face is the whole polytope
    auto whole = face_vertices(k4, OrderedPartition::parse("123", 3));
    CHECK(whole == vertices(k4));

    auto edge = face_vertices(permutahedron(3), OrderedPartition::parse("12|3", 3));
    REQUIRE(edge.size() == 2);
    CHECK(edge[0] == pt({1, 2, 3}));
    CHECK(edge[1] == pt({2, 1, 3}));
}

TEST_CASE("pi-lifting vertices") {
    auto k4 = kl4();
    auto vs = pi_lifting_vertices(k4, OrderedPartition::parse("1|3|2", 3), Rational(1, 2));
    std::vector<Point> expect = {
        pt({1, 4, 1}),
        {Rational(1, 2), Rational(4), Rational(1)},
        {Rational(1, 2), Rational(4), Rational(1, 2)},
        {Rational(1, 2), Rational(2), Rational(1, 2)}};
    std::sort(expect.begin(), expect.end());
    CHECK(vs == expect);

    // k = 1: conv(P u qP)
    Rational q(1, 3);
    auto p2 = permutahedron(2);
    auto one = pi_lifting_vertices(p2, OrderedPartition::parse("12", 2), q);
    std::vector<Point> ex;
    for (const auto& v : vertices(p2)) {
        ex.push_back(v);
        Point w = v;
        for (auto& c : w) c *= q;
        ex.push_back(w);
    }
    std::sort(ex.begin(), ex.end());
    CHECK(one == ex);

    auto tri = pi_lifting_vertices(p2, OrderedPartition::parse("1|2", 2), q);
    std::vector<Point> ext = {{Rational(1), Rational(2)},
                              {Rational(1, 3), Rational(2)},
                              {Rational(1, 3), Rational(2, 3)}};
    std::sort(ext.begin(), ext.end());
    CHECK(tri == ext);
}

TEST_CASE("pi-lifting H-representation") {
    auto k4 = kl4();
    Rational q(1, 2);
    for (const auto& pi : enumerate_ordered_partitions(3)) {
        auto sys = pi_lifting_hrep(k4, pi, q);
        auto vs = pi_lifting_vertices(k4, pi, q);
        for (const auto& v : vs) CHECK(satisfies_hrep(sys, v));
        for (const auto& iq : sys) {
            bool tight = false;
            for (const auto& v : vs)
                if (eval_lhs(iq, v) == iq.b) { tight = true; break; }
            CHECK(tight);
        }
    }
    // an interior point of a different cell violates the system
    auto sys132 = pi_lifting_hrep(k4, OrderedPartition::parse("1|3|2", 3), q);
    auto other = barycenter(pi_lifting_vertices(k4, OrderedPartition::parse("12|3", 3), q));
    CHECK_FALSE(satisfies_hrep(sys132, other));

    SubsetParams flat(2);  // z_1 = 0: block parameter degenerates
    flat.z[0b11] = 1;
    CHECK_THROWS_AS(pi_lifting_hrep(flat, OrderedPartition::parse("1|2", 2), q),
                    DegenerateBlock);
}

TEST_CASE("subdivision assignment") {
    auto k4 = kl4();
    Rational q(1, 2);
    // the barycenter of each cell lands back in that cell; full-dimensional
    // cells are recovered uniquely, collapsed ones sit on their neighbors'
    // boundary (here 13|2, whose block parameter is modular)
    for (const auto& pi : enumerate_ordered_partitions(3)) {
        auto cell = pi_lifting_vertices(k4, pi, q);
        auto x = barycenter(cell);
        auto cells = subdivision_cells(k4, q, x);
        CHECK(std::find(cells.begin(), cells.end(), pi) != cells.end());
        for (const auto& c : cells) CHECK(satisfies_hrep(pi_lifting_hrep(k4, c, q), x));
        if (affine_dimension(cell) == 3) CHECK(subdivision_assign(k4, q, x) == pi);
    }
    // the barycenter of the whole lift lies in some cell; round trip through
    // the inequality system
    auto x = barycenter(lifted_vertices(k4, q));
    auto cells = subdivision_cells(k4, q, x);
    REQUIRE(!cells.empty());
    for (const auto& pi : cells) CHECK(satisfies_hrep(pi_lifting_hrep(k4, pi, q), x));

    // a point on the shared boundary of two cells is ambiguous
    auto a = barycenter(pi_lifting_vertices(k4, OrderedPartition::parse("1|23", 3), q));
    auto b = barycenter(pi_lifting_vertices(k4, OrderedPartition::parse("1|2|3", 3), q));
    bool ambiguous_seen = false;
    for (int t = 1; t < 8 && !ambiguous_seen; ++t) {
        Point mid(3);
        for (int i = 0; i < 3; ++i)
            mid[i] = a[i] + Rational(t, 8) * (b[i] - a[i]);
        try {
            subdivision_assign(k4, q, mid);
        } catch (const AmbiguousCell& e) {
            ambiguous_seen = true;
            CHECK(e.chains.size() > 1);
        }
    }
    // boundary points exist along the segment between adjacent cells
    auto shared = subdivision_cells(
        k4, q, barycenter(face_vertices(k4, OrderedPartition::parse("1|2|3", 3))));
    CHECK(!shared.empty());

    CHECK_THROWS_AS(subdivision_assign(k4, q, pt({100, 100, 100})), NotInPolytope);
}

TEST_CASE("random points land in cells they satisfy") {
    auto p3 = permutahedron(3);
    Rational q(1, 3);
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> d(1, 23);
    int found = 0;
    while (found < 25) {
        Point x = {ratio(d(rng), 4), ratio(d(rng), 4), ratio(d(rng), 4)};
        if (!in_lifted_polytope(p3, q, x)) continue;
        ++found;
        for (const auto& pi : subdivision_cells(p3, q, x))
            CHECK(satisfies_hrep(pi_lifting_hrep(p3, pi, q), x));
    }
}

TEST_CASE("cell volumes sum to the lift volume") {
    std::vector<SubsetParams> bodies;
    SubsetParams seg(2);
    seg.z[0b11] = 1;
    shift_to_positive(seg);
    bodies.push_back(seg);
    bodies.push_back(permutahedron(2));
    bodies.push_back(permutahedron(3));
    bodies.push_back(kl4());
    for (const auto& p : bodies)
        for (Rational q : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
            Rational total = 0;
            for (const auto& pi : enumerate_ordered_partitions(p.n))
                total += pi_lifting_volume(p, pi, q);
            CHECK(total == hull_volume(lifted_vertices(p, q)));
        }
}

TEST_CASE("per-cell volume against the Euclidean oracle") {
    // trapezoid cell of the 1-dimensional permutahedron inside its lift
    auto p2 = permutahedron(2);
    Rational q(1, 2);
    auto pi = OrderedPartition::parse("12", 2);
    CHECK(pi_lifting_volume(p2, pi, q) ==
          hull_volume(pi_lifting_vertices(p2, pi, q)));
    // all cells of K(4) at q = 1/3 against the 3-D hull oracle
    auto k4 = kl4();
    for (const auto& part : enumerate_ordered_partitions(3))
        CHECK(pi_lifting_volume(k4, part, Rational(1, 3)) ==
              hull_volume(pi_lifting_vertices(k4, part, Rational(1, 3))));
}

TEST_CASE("Minkowski decomposition of pi-liftings") {
    // P^pi(q) = q P_pi + (1-q) P^pi(0): candidate vertex sums filtered by the
    // inequality system reproduce the vertex set
    auto k4 = kl4();
    Rational q(2, 5);
    for (const auto& pi : enumerate_ordered_partitions(3)) {
        auto sys = pi_lifting_hrep(k4, pi, q);
        auto a = face_vertices(k4, pi);
        auto b = pi_lifting_vertices(k4, pi, 0);
        std::set<Point> sums;
        for (const auto& u : a)
            for (const auto& v : b) {
                Point x(3);
                for (int i = 0; i < 3; ++i) x[i] = q * u[i] + (1 - q) * v[i];
                CHECK(satisfies_hrep(sys, x));
                std::vector<std::vector<Rational>> tight;
                for (const auto& iq : sys)
                    if (eval_lhs(iq, x) == iq.b) tight.push_back(iq.a);
                if (matrix_rank(std::move(tight)) == 3) sums.insert(x);
            }
        auto vs = pi_lifting_vertices(k4, pi, q);
        CHECK(std::vector<Point>(sums.begin(), sums.end()) == vs);
    }
}

TEST_CASE("pi-liftings are combinatorially simplex x face") {
    auto p3 = permutahedron(3);
    Rational q(1, 2);
    for (const std::string& s : {"12|3", "1|2|3", "123", "13|2"}) {
        auto pi = OrderedPartition::parse(s, 3);
        auto geom = face_poset_from_hrep(pi_lifting_vertices(p3, pi, q),
                                         pi_lifting_hrep(p3, pi, q));
        FinitePoset face_poset(0);
        bool first = true;
        for (const auto& f : face_of_partition(p3, pi)) {
            auto fl = face_lattice(f.params).poset;
            face_poset = first ? fl : face_poset.product(fl);
            first = false;
        }
        CHECK(poset_isomorphic(geom, simplex_poset(pi.k() + 1).product(face_poset)));
    }
}

TEST_CASE("face lattice of the permutahedron and associahedron") {
    auto fl3 = face_lattice(permutahedron(3));
    CHECK(fl3.classes.size() == 13);
    CHECK(fl3.f_vector() == std::vector<std::size_t>{6, 6, 1});

    auto k4 = face_lattice(kl4());
    CHECK(k4.classes.size() == 11);
    CHECK(k4.f_vector() == std::vector<std::size_t>{5, 5, 1});
}

TEST_CASE("lifting the permutahedron gives the next permutahedron") {
    auto lifted = face_lattice(q_lift(permutahedron(3), Rational(1, 2)));
    auto p4 = face_lattice(permutahedron(4));
    CHECK(lifted.f_vector() == p4.f_vector());
    CHECK(lifted.classes.size() == 75);  // trivial quotient: ordered Bell(4)
    CHECK(poset_isomorphic(lifted.poset, p4.poset));
}

TEST_CASE("q-liftings are combinatorially isomorphic across q") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        unsigned n = 2 + trial % 3;
        auto p = random_supermodular(rng, n);
        auto a = face_lattice(q_lift(p, Rational(1, 3)));
        auto b = face_lattice(q_lift(p, Rational(1, 2)));
        auto c = face_lattice(q_lift(p, Rational(2, 3)));
        CHECK(a.f_vector() == b.f_vector());
        CHECK(b.f_vector() == c.f_vector());
        CHECK(a.classes == b.classes);  // identical class representatives
        CHECK(b.classes == c.classes);
        CHECK(poset_isomorphic(a.poset, c.poset));
    }
}

TEST_CASE("hull volume oracle basics") {
    std::vector<Point> square = {pt({0, 0}), pt({1, 0}), pt({0, 1}), pt({1, 1})};
    CHECK(hull_volume(square) == 1);
    std::vector<Point> simplex3 = {pt({0, 0, 0}), pt({1, 0, 0}), pt({0, 1, 0}),
                                   pt({0, 0, 1})};
    CHECK(hull_volume(simplex3) == Rational(1, 6));
    CHECK(hull_volume({pt({2}), pt({7}), pt({4})}) == 5);
    CHECK(hull_volume({pt({0, 0, 0}), pt({1, 1, 1}), pt({2, 2, 2})}) == 0);
    CHECK_THROWS_AS(hull_volume({Point(4, Rational(0))}), DimensionTooHigh);
}

TEST_CASE("positive orthant shift") {
    SubsetParams p(3);
    p.z[0b111] = -2;
    p.z[0b011] = 1;
    auto copy = p;
    Rational t = shift_to_positive(copy);
    CHECK(t > 0);
    for (unsigned m = 1; m <= copy.full(); ++m) {
        CHECK(copy.z[m] == p.z[m] + t * Rational(popcount_mask(m)));
        for (unsigned b = 0; b < 3; ++b)
            if (!(m >> b & 1u)) CHECK(copy.z[m] < copy.z[m | (1u << b)]);
    }
}

TEST_CASE("ordered partition parsing") {
    auto pi = OrderedPartition::parse("12|3", 3);
    CHECK(pi.blocks == std::vector<unsigned>{0b011, 0b100});
    CHECK(pi.str() == "12|3");
    CHECK(pi.composition().parts() == std::vector<unsigned>{2, 1});
    CHECK_THROWS(OrderedPartition::parse("12|2", 3));
    CHECK_THROWS(OrderedPartition::parse("1|2", 3));
    CHECK(enumerate_ordered_partitions(3).size() == 13);
    CHECK(enumerate_ordered_partitions(4).size() == 75);
}
