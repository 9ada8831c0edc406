#pragma once

#include <boost/dynamic_bitset.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "conlat/error.hpp"

namespace conlat {

using Bits = boost::dynamic_bitset<>;
using Elem = int;

// A prime interval lo ≺ hi.
struct Edge {
    Elem lo;
    Elem hi;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class FiniteLattice {
public:
    FiniteLattice() = default;

    int size() const { return n_; }
    Elem bottom() const { return bottom_; }
    Elem top() const { return top_; }

    const std::string& name(Elem x) const { return names_[x]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Elem> find(std::string_view name) const;
    Elem index(std::string_view name) const;

    bool leq(Elem a, Elem b) const { return up_[a][b]; }
    bool lt(Elem a, Elem b) const { return a != b && up_[a][b]; }
    bool comparable(Elem a, Elem b) const { return up_[a][b] || up_[b][a]; }
    Elem meet(Elem a, Elem b) const { return meet_[a * n_ + b]; }
    Elem join(Elem a, Elem b) const { return join_[a * n_ + b]; }

    const Bits& up(Elem x) const { return up_[x]; }
    const Bits& down(Elem x) const { return down_[x]; }
    const std::vector<Elem>& upper_covers(Elem x) const { return upc_[x]; }
    const std::vector<Elem>& lower_covers(Elem x) const { return lowc_[x]; }
    bool covers(Elem lo, Elem hi) const { return edge_index(lo, hi) >= 0; }

    // Prime intervals, sorted by (lo, hi).
    const std::vector<Edge>& edges() const { return edges_; }
    int edge_index(Elem lo, Elem hi) const;

    // Length of the longest chain from the bottom.
    int height(Elem x) const { return height_[x]; }
    // Elements listed bottom-up (a linear extension).
    const std::vector<Elem>& linear_order() const { return topo_; }

    bool is_chain() const;

    friend FiniteLattice build_lattice(std::vector<std::string> names,
                                       const std::vector<std::pair<Elem, Elem>>& rel);

private:
    int n_ = 0;
    Elem bottom_ = 0, top_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, Elem> by_name_;
    std::vector<Bits> up_, down_;
    std::vector<Elem> meet_, join_;
    std::vector<std::vector<Elem>> upc_, lowc_;
    std::vector<std::vector<std::pair<Elem, int>>> up_edge_;
    std::vector<Edge> edges_;
    std::vector<int> height_;
    std::vector<Elem> topo_;
};

// Builds a lattice from any generating set of strict order pairs (a,b), a<b.
// Throws CycleError, DuplicateName, NotALattice.
FiniteLattice build_lattice(std::vector<std::string> names,
                            const std::vector<std::pair<Elem, Elem>>& rel);

FiniteLattice from_cover(const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& covers);

FiniteLattice chain(int n);
FiniteLattice boolean_square();
FiniteLattice m3();
FiniteLattice n5();

// Sublattice on a subset that is closed under meet and join (intervals,
// ideals, filters). `keep` lists kept elements; returns the restriction with
// names preserved, elements in increasing index order.
FiniteLattice restrict(const FiniteLattice& L, const std::vector<Elem>& keep);

FiniteLattice ideal(const FiniteLattice& L, Elem a);
FiniteLattice filter(const FiniteLattice& L, Elem a);
FiniteLattice interval(const FiniteLattice& L, Elem a, Elem b);
std::vector<Elem> interval_elems(const FiniteLattice& L, Elem a, Elem b);

FiniteLattice direct_product(const FiniteLattice& A, const FiniteLattice& B);
FiniteLattice glued_sum(const FiniteLattice& C0, const FiniteLattice& C1);
FiniteLattice dual(const FiniteLattice& L);

struct Glued {
    FiniteLattice lattice;
    std::vector<Elem> from1;  // L1 element -> glued element
    std::vector<Elem> from2;  // L2 element -> glued element
};

// Hall–Dilworth gluing: filter F1 of L1 is identified with ideal I2 of L2 via
// match (parallel vectors: match[i] in L2 corresponds to F1[i] in L1).
Glued hall_dilworth_glue(const FiniteLattice& L1, const std::vector<Elem>& F1,
                         const FiniteLattice& L2, const std::vector<Elem>& I2);

std::vector<Elem> join_irreducibles(const FiniteLattice& L);
std::vector<Elem> meet_irreducibles(const FiniteLattice& L);
std::vector<Elem> j_zero(const FiniteLattice& L);
std::vector<Elem> j_plus(const FiniteLattice& L);
std::vector<Elem> coatoms(const FiniteLattice& L);
std::vector<Elem> atoms(const FiniteLattice& L);

bool is_distributive_triple(const FiniteLattice& L);
bool is_distributive_birkhoff(const FiniteLattice& L);
// Runs both checks; throws if they disagree.
bool is_distributive(const FiniteLattice& L);

struct ConditionReport {
    bool holds = false;
    bool planar = false;
    std::vector<Elem> join_reducible_coatoms;
};
ConditionReport condition_iii(const FiniteLattice& D);

struct TopDecomposition {
    Elem p = 0, q = 0;
    FiniteLattice d_prime;          // ↓p
    std::vector<Elem> d_prime_map;  // d_prime element -> D element
    std::vector<Elem> q_filter;     // ↑q in D, bottom-up
};
TopDecomposition decompose_top(const FiniteLattice& D);

// Downset lattice of a poset given by its strict order pairs on n points.
// Element names are the sorted member lists, e.g. "{}", "{0,2}".
FiniteLattice downset_lattice(int n, const std::vector<std::pair<int, int>>& lt);

std::optional<std::vector<Elem>> find_isomorphism(const FiniteLattice& A, const FiniteLattice& B);
bool isomorphic(const FiniteLattice& A, const FiniteLattice& B);

// Relabels elements: new index of old x is perm[x].
FiniteLattice permute(const FiniteLattice& L, const std::vector<Elem>& perm);

}  // namespace conlat
