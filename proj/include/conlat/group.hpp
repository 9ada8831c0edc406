#pragma once

#include <vector>

#include "conlat/lattice.hpp"

namespace conlat {

using Perm = std::vector<int>;

struct PermutationGroup {
    int degree = 0;
    std::vector<Perm> generators;
    long order = 1;

    // All elements by closure; throws TooLarge above `limit`.
    std::vector<Perm> elements(long limit = 10000) const;
};

PermutationGroup make_group(int degree, std::vector<Perm> generators);
PermutationGroup symmetric_group(int n);
PermutationGroup cyclic_group(int n);

// Throws TooLarge when more than `limit` automorphisms exist.
PermutationGroup automorphism_group(const FiniteLattice& L, long limit = 100000);
bool is_rigid(const FiniteLattice& L);

// Orders must not exceed 10^4 (TooLarge).
bool group_isomorphic(const PermutationGroup& g1, const PermutationGroup& g2);

}  // namespace conlat
