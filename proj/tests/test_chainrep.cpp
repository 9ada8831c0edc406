#include <random>

#include "conlat/chainrep.hpp"
#include "doctest.h"

using namespace conlat;

namespace {

// 0 < a,b < a∨b < 1: J = {a, b, 1}.
FiniteLattice square_with_top() {
    return from_cover({"0", "a", "b", "ab", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "ab"}, {"b", "ab"}, {"ab", "1"}});
}

std::vector<Elem> sorted(std::vector<Elem> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// Brute-force srep: every interval, join taken straight from the order.
std::vector<Elem> srep_oracle(const LabeledChain& lc) {
    const auto& D = lc.target;
    std::vector<Elem> out{D.bottom()};
    for (int lo = 0; lo <= lc.length(); ++lo)
        for (int hi = lo + 1; hi <= lc.length(); ++hi) {
            // least element above every label in [lo, hi)
            Elem best = -1;
            for (Elem z = 0; z < D.size(); ++z) {
                bool ub = true;
                for (int i = lo; i < hi; ++i) ub = ub && D.leq(lc.labels[i], z);
                if (ub && (best < 0 || D.leq(z, best))) best = z;
            }
            out.push_back(best);
        }
    return sorted(out);
}

// Distributive lattices with join-irreducible top: downsets of a poset on n
// points with an extra point above everything.
std::vector<FiniteLattice> ji_top_corpus(int max_points) {
    std::vector<FiniteLattice> out;
    for (int n = 0; n <= max_points; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
            std::vector<std::vector<bool>> lt(n + 1, std::vector<bool>(n + 1, false));
            for (size_t k = 0; k < pairs.size(); ++k)
                if (mask >> k & 1) lt[pairs[k].first][pairs[k].second] = true;
            bool transitive = true;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        if (lt[i][j] && lt[j][k] && !lt[i][k]) transitive = false;
            if (!transitive) continue;
            std::vector<std::pair<int, int>> rel;
            for (int i = 0; i < n; ++i) {
                for (int j = 0; j < n; ++j)
                    if (lt[i][j]) rel.emplace_back(i, j);
                rel.emplace_back(i, n);
            }
            out.push_back(downset_lattice(n + 1, rel));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("erep and srep examples") {
    auto c2 = chain(2);
    LabeledChain one{c2, {1}};
    CHECK(erep(one, 0, 0) == c2.bottom());
    CHECK(erep(one, 0, 1) == 1);
    CHECK(srep(one) == std::vector<Elem>{0, 1});

    auto D = square_with_top();
    Elem a = D.index("a"), b = D.index("b");
    LabeledChain ab{D, {a, b}};
    CHECK(srep(ab) == sorted({D.bottom(), a, b, D.index("ab")}));
    LabeledChain same{D, {a, a, a}};
    CHECK(srep(same) == sorted({D.bottom(), a}));
}

TEST_CASE("make_labeled_chain validates labels") {
    auto D = square_with_top();
    CHECK_THROWS_WITH_AS(make_labeled_chain(D, {D.index("ab")}), doctest::Contains("PreconditionFailed"), Error);
    CHECK_THROWS_WITH_AS(make_labeled_chain(D, {D.index("a")}), doctest::Contains("misses"), Error);
}

TEST_CASE("extend_star") {
    auto D = square_with_top();
    auto lc = make_labeled_chain(D, {D.index("a"), D.index("1"), D.index("b")});
    auto star = extend_star(lc);
    CHECK(star.length() == lc.length() + 1);
    CHECK(star.labels.back() == D.top());
    auto before = srep(lc), after = srep(star);
    CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    CHECK(std::binary_search(after.begin(), after.end(), D.top()));

    auto b2 = boolean_square();
    LabeledChain flat{b2, {b2.index("a"), b2.index("b")}};
    CHECK_THROWS_WITH_AS(extend_star(flat), doctest::Contains("TopNotJoinIrreducible"), Error);
}

TEST_CASE("build_chain examples") {
    auto c2 = chain(2);
    CHECK(build_chain(c2, {0, 1}).labels == std::vector<Elem>{1});

    auto D = square_with_top();
    auto Jp = j_plus(D);
    CHECK(srep(build_chain(D, Jp)) == sorted(Jp));

    auto Q = Jp;
    Q.push_back(D.index("ab"));
    auto lc = build_chain(D, Q);
    CHECK(srep(lc) == sorted(Q));
    bool adjacent = false;
    for (int i = 0; i + 1 < lc.length(); ++i)
        if (D.join(lc.labels[i], lc.labels[i + 1]) == D.index("ab")) adjacent = true;
    CHECK(adjacent);

    CHECK_THROWS_WITH_AS(build_chain(D, {D.bottom(), D.top()}), doctest::Contains("PreconditionFailed"), Error);
}

TEST_CASE("build_chain refuses a join of three join-irreducibles") {
    // Three atoms under a join-irreducible top: a∨b∨c needs three labels.
    auto D = downset_lattice(4, {{0, 3}, {1, 3}, {2, 3}});
    auto Q = j_plus(D);
    Elem abc = D.index("{0,1,2}");
    Q.push_back(abc);
    CHECK_THROWS_WITH_AS(build_chain(D, Q), doctest::Contains("Unrepresentable"), Error);
}

TEST_CASE("build_chain then srep is the identity over small planar D") {
    int cases = 0;
    for (const auto& D : ji_top_corpus(3)) {
        if (!condition_iii(D).planar) continue;
        auto Jp = sorted(j_plus(D));
        std::vector<Elem> rest;
        for (Elem x = 0; x < D.size(); ++x)
            if (!std::binary_search(Jp.begin(), Jp.end(), x)) rest.push_back(x);
        for (unsigned m = 0; m < (1u << rest.size()); ++m) {
            auto Q = Jp;
            for (size_t i = 0; i < rest.size(); ++i)
                if (m >> i & 1) Q.push_back(rest[i]);
            Q = sorted(Q);
            auto lc = build_chain(D, Q);
            CHECK(srep(lc) == Q);
            CHECK(srep_oracle(lc) == Q);
            ++cases;
        }
    }
    CHECK(cases > 20);
}

TEST_CASE("erep is monotone in the interval") {
    auto D = downset_lattice(4, {{0, 1}, {0, 3}, {1, 3}, {2, 3}});
    auto J = join_irreducibles(D);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<size_t> pick(0, J.size() - 1);
    std::vector<Elem> labels(40);
    for (auto& x : labels) x = J[pick(rng)];
    LabeledChain lc{D, labels};
    std::uniform_int_distribution<int> pos(0, 40);
    for (int t = 0; t < 5000; ++t) {
        int a = pos(rng), b = pos(rng), c = pos(rng), d = pos(rng);
        int lo = std::min(a, b), hi = std::max(a, b);
        int lo2 = std::min({lo, c, d}), hi2 = std::max({hi, c, d});
        CHECK(D.leq(erep(lc, lo, hi), erep(lc, lo2, hi2)));
    }
}

TEST_CASE("brute-force search agrees with build_chain") {
    auto D = square_with_top();
    auto Q = j_plus(D);
    std::vector<Elem> witness;
    CHECK(brute_force_representable(D, Q, 6, &witness) == SearchOutcome::Found);
    CHECK(srep(LabeledChain{D, witness}) == sorted(Q));
    Q.push_back(D.index("ab"));
    CHECK(brute_force_representable(D, Q, 6, &witness) == SearchOutcome::Found);
    CHECK(srep(LabeledChain{D, witness}) == sorted(Q));
    // Too short to be surjective and represent everything.
    CHECK(brute_force_representable(D, Q, 2) == SearchOutcome::Inconclusive);
}
