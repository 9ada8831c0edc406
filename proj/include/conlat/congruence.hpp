#pragma once

#include <vector>

#include "conlat/lattice.hpp"

namespace conlat {

// A partition stored as rep[x] = least element of x's block.
class Congruence {
public:
    Congruence() = default;
    explicit Congruence(std::vector<Elem> rep);

    static Congruence identity(int n);
    static Congruence full(int n);

    int size() const { return static_cast<int>(rep_.size()); }
    bool same(Elem x, Elem y) const { return rep_[x] == rep_[y]; }
    Elem rep(Elem x) const { return rep_[x]; }
    const std::vector<Elem>& reps() const { return rep_; }
    int block_count() const;
    bool is_identity() const { return block_count() == size(); }
    bool is_full() const { return block_count() == 1; }
    std::vector<std::vector<Elem>> blocks() const;

    // this ⊆ other
    bool refines(const Congruence& other) const;

    friend bool operator==(const Congruence&, const Congruence&) = default;
    friend auto operator<=>(const Congruence&, const Congruence&) = default;

private:
    std::vector<Elem> rep_;
};

// Least congruence collapsing a and b. Translates by join-irreducible z for
// joins and meet-irreducible z for meets, which suffices because every
// polynomial translate factors through those.
Congruence principal_congruence(const FiniteLattice& L, Elem a, Elem b);
// Textbook closure over every z; the reference the fast version is tested against.
Congruence principal_congruence_naive(const FiniteLattice& L, Elem a, Elem b);
Congruence principal_congruence(const FiniteLattice& L, Edge p);

// Least equivalence containing both (it is automatically a congruence).
Congruence join(const Congruence& a, const Congruence& b);
bool is_congruence(const FiniteLattice& L, const Congruence& c);

// J(Con L) computed from prime intervals: every prime interval's congruence,
// deduplicated, with the containment order.
struct EdgeCongruences {
    std::vector<int> edge_class;       // edge index -> jcon index
    std::vector<Congruence> jcon;      // distinct con(p)
    std::vector<Edge> generator;       // one generating prime interval per jcon
    std::vector<Bits> below;           // below[i][j] iff jcon[j] ⊆ jcon[i]

    int size() const { return static_cast<int>(jcon.size()); }
    bool contains(int i, int j) const { return below[i][j]; }
};
EdgeCongruences edge_congruences(const FiniteLattice& L);

struct ConLattice {
    FiniteLattice lattice;           // element k is dict[k]
    std::vector<Congruence> dict;
};
// Con(L): joins of prime-interval congruences plus Δ, ordered by refinement.
// Throws TooLarge when more than `limit` congruences appear.
ConLattice congruence_lattice(const FiniteLattice& L, int limit = 4096);

// con(a,b) for all a ≤ b, as the set of J(Con) members below it; the
// decomposition along a maximal chain is used. Sorted, distinct.
std::vector<Bits> principal_downsets(const FiniteLattice& L, const EdgeCongruences& ec);
// {con(a,b)} as partitions, canonical order.
std::vector<Congruence> princ_set(const FiniteLattice& L);
// Same set computed by closing every pair separately; O(n^4), small inputs only.
std::vector<Congruence> princ_set_naive(const FiniteLattice& L);

bool prime_perspective_down(const FiniteLattice& L, Edge p1, Edge p2);
bool prime_perspective_up(const FiniteLattice& L, Edge p1, Edge p2);
bool prime_projectivity(const FiniteLattice& L, Edge p, Edge q);
// reach[i][j] iff edge j is prime-projective from edge i.
std::vector<Bits> prime_projectivity_closure(const FiniteLattice& L);

bool is_01_separating(const FiniteLattice& L);

}  // namespace conlat
