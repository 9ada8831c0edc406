#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conlat/chainrep.hpp"
#include "conlat/quasicolor.hpp"

namespace conlat {

struct Gadget {
    ColoredLattice colored;
    std::vector<std::pair<std::string, Edge>> designated;

    std::vector<Edge> all(const std::string& role) const;
    Edge one(const std::string& role) const;  // throws if absent
};

bool is_simple(const FiniteLattice& L);

// Con ≅ 3-chain; alpha-coloured edges generate the middle congruence, beta
// edges generate ∇. Roles: thick, alpha-edge, beta-edge (the bottom and top
// boundary edges, which form an ideal and a filter respectively).
Gadget gadget_K(const Color& alpha, const Color& beta, const std::optional<FiniteLattice>& M = std::nullopt);
// The stored instance, uncoloured.
FiniteLattice k_lattice();

// Chain x1 < ... < xm. Roles: thick (one per K copy), bottom, top.
Gadget snake(const std::vector<Color>& chain);
Gadget snake(const QuasiOrder& colors);

// The chain of lc with the i-th x-labelled edge (from below) coloured
// x^(-i); origin[c] is the D element behind colour c.
struct Branch {
    Gadget gadget;
    std::vector<Elem> origin;
};
Branch branch_from_chain(const LabeledChain& lc);

// Spine coloured p1,e,p2,f,p3,a1,p4,...,ak,p_{k+3} (e,f omitted when absent)
// with rungs coloured q; K(e,q) and K(f,q) sit on the upper copies of the e
// and f edges. Roles: spine (every spine edge, bottom-up), thick.
Gadget s_k_gadget(const std::vector<Color>& p, const std::optional<Color>& e, const std::optional<Color>& f,
                  const Color& q, const std::vector<Color>& a);
// The spine elements bottom-up (an ideal).
std::vector<Elem> spine_elements(const Gadget& sk);

Gadget covering_square(const Color& c1, const Color& c2);

// n-th member of a fixed family of pairwise non-isomorphic simple lattices
// with trivial automorphism group. Throws ExhaustedFamily.
FiniteLattice rigid_simple(int n);
int rigid_simple_family_size();

// Replaces the prime interval p by a copy of M (new edges inherit p's
// colour). Old element indices are kept; new ones are appended. Refuses
// (UnsafeInterval) when some other cover at p's ends generates a congruence
// not above con(p), since then the substitution would change Con.
ColoredLattice replace_prime_interval(const ColoredLattice& cl, Edge p, const FiniteLattice& M);
bool substitution_safe(const FiniteLattice& L, const EdgeCongruences& ec, Edge p);

}  // namespace conlat
