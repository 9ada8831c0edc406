#pragma once

#include <functional>

#include "conlat/lattice.hpp"

namespace conlat {

// Every lattice on n elements whose inner elements (all but bottom and top)
// are naturally labeled: x < y only if x has the smaller index. Each
// isomorphism type shows up at least once. Elements are named "0", "x1",
// ..., "1". Return false from visit to stop.
void for_each_small_lattice(int n, const std::function<bool(const FiniteLattice&)>& visit);

}  // namespace conlat
