#pragma once

#include <vector>

#include "conlat/lattice.hpp"

namespace conlat {

// A chain 0 ≺ 1 ≺ ... ≺ n with edge i = [i, i+1] labeled by labels[i] ∈ J(D).
struct LabeledChain {
    FiniteLattice target;
    std::vector<Elem> labels;

    int length() const { return static_cast<int>(labels.size()); }
    FiniteLattice chain_lattice() const;
};

// Validates labels ⊆ J(D) and surjectivity onto J(D).
LabeledChain make_labeled_chain(const FiniteLattice& D, std::vector<Elem> labels);

// Join of the labels of edges lo..hi-1 (heights); bottom of D when lo == hi.
Elem erep(const LabeledChain& lc, int lo, int hi);
// All represented elements, sorted by index.
std::vector<Elem> srep(const LabeledChain& lc);

// Appends a new top edge labeled 1_D. Throws TopNotJoinIrreducible.
LabeledChain extend_star(const LabeledChain& lc);

// Puts c1 atop c0 (same target).
LabeledChain concat(const LabeledChain& c0, const LabeledChain& c1);

// A chain representing exactly Q, for planar distributive D with
// join-irreducible top. Throws Unrepresentable on an internal failure.
LabeledChain build_chain(const FiniteLattice& D, const std::vector<Elem>& Q);

bool is_candidate_subset(const FiniteLattice& D, const std::vector<Elem>& Q);

enum class SearchOutcome { Found, Inconclusive };
// Tries every label sequence over J(D) up to max_len edges (test utility).
SearchOutcome brute_force_representable(const FiniteLattice& D, const std::vector<Elem>& Q, int max_len,
                                        std::vector<Elem>* witness = nullptr);

}  // namespace conlat
