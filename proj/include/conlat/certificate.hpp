#pragma once

#include <string>
#include <utility>
#include <vector>

#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

struct Certificate {
    FiniteLattice L;
    FiniteLattice D;
    std::vector<Elem> Q;                           // sorted
    std::vector<std::pair<Congruence, Elem>> phi;  // Con(L) -> D
    std::vector<Elem> edge_label;                  // L edge -> J(D), the colouring
    bool ji_top = false;
    std::vector<Elem> cstar;                       // C* in L, bottom-up (ji-top builds)
    std::vector<Elem> cstar_labels;                // D label per C* edge
    std::vector<Edge> thick;
    std::vector<std::string> log;
};

}  // namespace conlat
