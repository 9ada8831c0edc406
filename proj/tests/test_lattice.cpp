#include <random>

#include "conlat/lattice.hpp"
#include "doctest.h"
#include "oracle.hpp"

using namespace conlat;

namespace {

FiniteLattice c3xc3() { return direct_product(chain(3), chain(3)); }
FiniteLattice cube() { return direct_product(boolean_square(), chain(2)); }

}  // namespace

TEST_CASE("from_cover builds the small standard lattices") {
    auto c2 = chain(2);
    CHECK(c2.size() == 2);
    CHECK(c2.join(0, 1) == 1);
    CHECK(c2.meet(0, 1) == 0);

    auto b2 = boolean_square();
    CHECK(b2.join(b2.index("a"), b2.index("b")) == b2.index("1"));
    CHECK(b2.meet(b2.index("a"), b2.index("b")) == b2.index("0"));

    auto m = m3();
    CHECK(m.size() == 5);
    CHECK(m.edges().size() == 6);
}

TEST_CASE("from_cover rejects malformed input") {
    CHECK_THROWS_WITH_AS(from_cover({"0", "1", "0"}, {}), doctest::Contains("DuplicateName"), Error);
    CHECK_THROWS_WITH_AS(from_cover({"0", "1"}, {{"0", "x"}}), doctest::Contains("UnknownElement"), Error);
    CHECK_THROWS_WITH_AS(from_cover({"a", "b"}, {{"a", "b"}, {"b", "a"}}), doctest::Contains("CycleError"),
                         Error);
    // Two maximal elements.
    CHECK_THROWS_WITH_AS(from_cover({"0", "a", "b"}, {{"0", "a"}, {"0", "b"}}),
                         doctest::Contains("NotALattice"), Error);
    // a,b below both c and d: no least upper bound.
    CHECK_THROWS_WITH_AS(from_cover({"0", "a", "b", "c", "d", "1"},
                                    {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"},
                                     {"c", "1"}, {"d", "1"}}),
                         doctest::Contains("NotALattice"), Error);
}

TEST_CASE("covers are transitively reduced") {
    auto L = from_cover({"0", "a", "1"}, {{"0", "a"}, {"a", "1"}, {"0", "1"}});
    CHECK(L.edges().size() == 2);
    CHECK_FALSE(L.covers(0, 2));
}

TEST_CASE("meet and join agree with the brute-force order oracle on random lattices") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 60; ++t) {
        auto L = oracle::random_lattice(rng, 2 + t % 7, 0.3);
        auto le = oracle::leq_matrix(L);
        for (int a = 0; a < L.size(); ++a)
            for (int b = 0; b < L.size(); ++b) {
                REQUIRE(L.join(a, b) == oracle::lub(le, a, b));
                REQUIRE(L.meet(a, b) == oracle::glb(le, a, b));
            }
        for (int a = 0; a < L.size(); ++a)
            for (int b = 0; b < L.size(); ++b) {
                CHECK(L.join(a, b) == L.join(b, a));
                CHECK(L.join(a, L.meet(a, b)) == a);
                for (int c = 0; c < L.size(); ++c) CHECK(L.join(a, L.join(b, c)) == L.join(L.join(a, b), c));
            }
        for (auto e : L.edges())
            for (int z = 0; z < L.size(); ++z) CHECK_FALSE((L.lt(e.lo, z) && L.lt(z, e.hi)));
    }
}

TEST_CASE("join-irreducibles") {
    CHECK(join_irreducibles(chain(2)) == std::vector<Elem>{1});
    auto b2 = boolean_square();
    CHECK(join_irreducibles(b2) == std::vector<Elem>{b2.index("a"), b2.index("b")});
    auto c = c3xc3();
    auto J = join_irreducibles(c);
    REQUIRE(J.size() == 4);
    int comparable_pairs = 0;
    for (Elem x : J)
        for (Elem y : J)
            if (x != y && c.leq(x, y)) ++comparable_pairs;
    CHECK(comparable_pairs == 2);
    CHECK(j_plus(b2).size() == 4);
    CHECK(j_zero(chain(3)).size() == 3);
}

TEST_CASE("distributivity checks") {
    CHECK(is_distributive(boolean_square()));
    CHECK_FALSE(is_distributive(m3()));
    CHECK_FALSE(is_distributive(n5()));
    CHECK(is_distributive(c3xc3()));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 80; ++t) {
        auto L = oracle::random_lattice(rng, 1 + t % 7, 0.4);
        CHECK(is_distributive_triple(L) == is_distributive_birkhoff(L));
    }
}

TEST_CASE("condition_iii") {
    auto r = condition_iii(boolean_square());
    CHECK(r.holds);
    CHECK(r.planar);
    CHECK(r.join_reducible_coatoms.empty());

    r = condition_iii(c3xc3());
    CHECK(r.planar);
    CHECK_FALSE(r.holds);
    CHECK(r.join_reducible_coatoms.size() == 2);

    r = condition_iii(cube());
    CHECK_FALSE(r.planar);
    CHECK_FALSE(r.holds);

    CHECK_THROWS_WITH_AS(condition_iii(m3()), doctest::Contains("NotDistributive"), Error);
}

TEST_CASE("condition_iii is invariant under relabeling") {
    std::mt19937_64 rng(3);
    std::vector<FiniteLattice> ds{c3xc3(), cube(), boolean_square(), direct_product(chain(2), chain(4)),
                                  chain(5), direct_product(chain(3), chain(2))};
    for (const auto& D : ds) {
        std::vector<Elem> perm(D.size());
        for (int i = 0; i < D.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        auto P = permute(D, perm);
        auto a = condition_iii(D), b = condition_iii(P);
        CHECK(a.holds == b.holds);
        CHECK(a.planar == b.planar);
        CHECK(a.join_reducible_coatoms.size() == b.join_reducible_coatoms.size());
    }
}

TEST_CASE("decompose_top") {
    auto b2 = boolean_square();
    auto t = decompose_top(b2);
    CHECK(t.p == b2.index("a"));
    CHECK(t.q == b2.index("b"));
    CHECK(t.d_prime.size() == 2);
    CHECK(t.q_filter == std::vector<Elem>{b2.index("b"), b2.index("1")});

    CHECK_THROWS_WITH_AS(decompose_top(c3xc3()), doctest::Contains("NoDecomposition"), Error);
    CHECK_THROWS_WITH_AS(decompose_top(chain(3)), doctest::Contains("TopIrreducible"), Error);

    auto D = direct_product(chain(3), chain(2));
    auto d = decompose_top(D);
    CHECK(D.covers(d.p, D.top()));
    CHECK(D.join(d.p, d.q) == D.top());
    CHECK(static_cast<int>(d.q_filter.size()) == D.size() - d.d_prime.size());
    for (Elem x : d.q_filter) CHECK_FALSE(D.leq(x, d.p));
}

TEST_CASE("Hall–Dilworth gluing") {
    auto g = hall_dilworth_glue(chain(2), {1}, chain(2), {0});
    CHECK(isomorphic(g.lattice, chain(3)));

    auto b = boolean_square();
    auto sq = hall_dilworth_glue(b, {b.index("a"), b.index("1")}, b, {b.index("0"), b.index("a")});
    CHECK(sq.lattice.size() == 6);
    auto le = oracle::leq_matrix(sq.lattice);
    for (int x = 0; x < 6; ++x)
        for (int y = 0; y < 6; ++y) CHECK(oracle::lub(le, x, y) == sq.lattice.join(x, y));
    // L1 embeds as an ideal with its own order.
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(b.leq(x, y) == sq.lattice.leq(sq.from1[x], sq.from1[y]));
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) CHECK(b.leq(x, y) == sq.lattice.leq(sq.from2[x], sq.from2[y]));

    std::vector<Elem> all{0, 1, 2, 3};
    auto whole = hall_dilworth_glue(b, all, b, all);
    CHECK(isomorphic(whole.lattice, b));

    CHECK_THROWS_WITH_AS(hall_dilworth_glue(b, {b.index("a")}, b, {b.index("0")}),
                         doctest::Contains("NotAFilter"), Error);
    CHECK_THROWS_WITH_AS(hall_dilworth_glue(b, {b.index("1")}, b, {b.index("a")}),
                         doctest::Contains("NotAnIdeal"), Error);
}

TEST_CASE("products, sums, ideals, filters") {
    CHECK(isomorphic(glued_sum(chain(2), chain(2)), chain(3)));
    CHECK(isomorphic(direct_product(chain(2), chain(2)), boolean_square()));
    auto n = n5();
    CHECK(isomorphic(filter(n, n.index("c")), chain(2)));
    CHECK(ideal(n, n.index("b")).size() == 3);
    CHECK_THROWS_WITH_AS(glued_sum(boolean_square(), chain(2)), doctest::Contains("NotAChain"), Error);
}

TEST_CASE("Birkhoff round trip") {
    for (const auto& D : {boolean_square(), c3xc3(), cube(), chain(4), direct_product(chain(2), chain(4))}) {
        auto J = join_irreducibles(D);
        std::vector<std::pair<int, int>> lt;
        for (size_t i = 0; i < J.size(); ++i)
            for (size_t j = 0; j < J.size(); ++j)
                if (D.lt(J[i], J[j])) lt.emplace_back(static_cast<int>(i), static_cast<int>(j));
        CHECK(isomorphic(downset_lattice(static_cast<int>(J.size()), lt), D));
    }
}

TEST_CASE("isomorphism search") {
    CHECK(isomorphic(m3(), m3()));
    CHECK_FALSE(isomorphic(m3(), n5()));
    std::mt19937_64 rng(9);
    for (int t = 0; t < 30; ++t) {
        auto L = oracle::random_lattice(rng, 3 + t % 6, 0.35);
        std::vector<Elem> perm(L.size());
        for (int i = 0; i < L.size(); ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        auto P = permute(L, perm);
        auto m = find_isomorphism(L, P);
        REQUIRE(m.has_value());
        for (int a = 0; a < L.size(); ++a)
            for (int b = 0; b < L.size(); ++b) CHECK(L.leq(a, b) == P.leq((*m)[a], (*m)[b]));
    }
}
