#include "conlat/pipeline.hpp"
#include "conlat/verify.hpp"
#include "doctest.h"

using namespace conlat;

namespace {

FiniteLattice from_j(const FiniteLattice& D) {
    auto J = join_irreducibles(D);
    std::vector<std::pair<int, int>> lt;
    for (size_t a = 0; a < J.size(); ++a)
        for (size_t b = 0; b < J.size(); ++b)
            if (D.lt(J[a], J[b])) lt.emplace_back(static_cast<int>(a), static_cast<int>(b));
    return downset_lattice(static_cast<int>(J.size()), lt);
}

}  // namespace

TEST_CASE("enumerate_posets counts") {
    // unlabeled posets on 0..5 points
    const int expect[] = {1, 1, 2, 5, 16, 63};
    for (int k = 0; k <= 5; ++k) {
        int n = 0;
        for (const auto& [pts, lt] : enumerate_posets(k)) n += pts == k;
        CHECK(n == expect[k]);
    }
}

TEST_CASE("enumerate_distributive") {
    const size_t cumulative[] = {1, 2, 4, 9, 25};
    for (int k = 0; k <= 4; ++k) {
        auto all = enumerate_distributive(k);
        CHECK(all.size() == cumulative[k]);
        for (size_t i = 0; i < all.size(); ++i) {
            CHECK(is_distributive(all[i]));
            CHECK(isomorphic(from_j(all[i]), all[i]));
            for (size_t j = 0; j < i; ++j) CHECK_FALSE(isomorphic(all[i], all[j]));
        }
    }
    CHECK_THROWS_AS(enumerate_distributive(6), Error);
}

TEST_CASE("jcon_isomorphisms") {
    auto B2 = boolean_square();
    auto ec = edge_congruences(B2);
    CHECK(jcon_isomorphisms(ec, B2).size() == 2);
    CHECK(jcon_isomorphisms(ec, chain(3)).empty());
    auto c4 = chain(4);
    CHECK(jcon_isomorphisms(edge_congruences(c4), direct_product(boolean_square(), chain(2))).size() == 6);
}

TEST_CASE("verify reports every check on a good certificate") {
    auto D = chain(3);
    auto cert = construct_general(D, {0, 1, 2});
    auto rep = verify_certificate(cert);
    CHECK(rep.ok());
    CHECK(rep.first_failure() == nullptr);
    std::vector<std::string> names;
    for (const auto& c : rep.checks) names.push_back(c.name);
    for (const char* n : {"D-distributive", "Q-candidate", "con-size", "phi-iso", "coloring", "princ-equals-Q"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    if (cert.ji_top)
        for (const char* n : {"cstar-filter", "cstar-labels", "cstar-boundary", "01-separating"})
            CHECK(std::find(names.begin(), names.end(), n) != names.end());
}

TEST_CASE("verify rejects bad inputs") {
    auto D = chain(3);
    auto cert = construct_general(D, {0, 1, 2});

    auto nd = cert;
    nd.D = n5();
    auto r1 = verify_certificate(nd);
    CHECK_FALSE(r1.ok());
    CHECK(r1.first_failure()->name == "D-distributive");

    auto nq = cert;
    nq.Q = {0, 2};  // misses a join-irreducible
    auto r2 = verify_certificate(nq);
    CHECK_FALSE(r2.ok());
    CHECK(r2.first_failure()->name == "Q-candidate");

    auto wrong_size = cert;
    wrong_size.D = chain(4);
    wrong_size.Q = {0, 1, 2, 3};
    CHECK_FALSE(verify_certificate(wrong_size).ok());
}
