#pragma once

#include <functional>
#include <vector>

#include "conlat/lattice.hpp"

namespace conlat {

// Enumerates every cover-preserving bijection A -> B (i.e. every lattice
// isomorphism) by individualization and colour refinement on the Hasse
// diagrams. The callback gets the map A-index -> B-index and returns false to
// stop early.
void search_isomorphisms(const FiniteLattice& A, const FiniteLattice& B,
                         const std::function<bool(const std::vector<Elem>&)>& visit);

}  // namespace conlat
