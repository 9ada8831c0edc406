#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conlat/certificate.hpp"
#include "conlat/chainrep.hpp"
#include "conlat/gadgets.hpp"
#include "conlat/quasicolor.hpp"

namespace conlat {

struct BuildOptions {
    std::optional<FiniteLattice> cap;  // default: rigid_simple(0)
    bool validate_steps = true;        // recheck C1/C2 after every step below kDebugValidateBelow
};

// Chains covering J(D)∖{1_D} whose orders, together with x ≤ 1_D, generate
// the order of J(D).
std::vector<std::vector<Elem>> chain_cover(const FiniteLattice& D);
bool chain_cover_generates(const FiniteLattice& D, const std::vector<std::vector<Elem>>& chains);

struct FramePlan {
    FiniteLattice D;
    std::vector<std::vector<Elem>> chains;
    LabeledChain labeled_chain;  // without the C* edge
    FiniteLattice cap;
};
FramePlan make_plan(const FiniteLattice& D, const LabeledChain& lc, const BuildOptions& opts = {});

// A lattice under construction: named elements, generating pairs and edge
// colours, plus the branch bookkeeping the flags need.
struct FrameBuild {
    FiniteLattice D;
    Color pe;  // the top generator, 1_D with tag 0
    std::vector<std::string> names;
    std::vector<std::pair<Elem, Elem>> rel;
    std::map<std::pair<Elem, Elem>, Color> ecol;
    std::vector<std::pair<Color, Color>> order;  // generating pairs of the colour quasiorder
    std::map<Color, Elem> alter;                 // colour -> J(D)

    std::vector<Gadget> branches;                // snakes, then S_t
    std::vector<std::vector<Elem>> branch_at;    // branch element -> frame element
    std::vector<std::map<Color, int>> branch_colors;
    Elem o = 0, i = 0;
    std::vector<Elem> cstar;
    std::vector<Elem> cstar_labels;
    std::vector<Edge> thick;                     // as element pairs of the frame
    std::vector<std::string> log;
    int flags = 0;

    Elem add_element(const std::string& name);
    void add_edge(Elem lo, Elem hi, const Color& c);
    ColoredLattice materialize() const;
};

FrameBuild build_frame(const FramePlan& plan, const BuildOptions& opts = {});
// Star-shaped spanning trees over every alter-ego class, centred at a snake copy.
std::vector<std::pair<Color, Color>> epsilon_pairs(const FrameBuild& fb);
void add_flag(FrameBuild& fb, const Color& g, const Color& h, const BuildOptions& opts = {});

struct JiTopResult {
    ColoredLattice eta;      // colours of the ladder's last step
    ColoredLattice colored;  // composed with δ, colours are J(D) names
    FrameBuild frame;
};
JiTopResult build_ji_top(const FiniteLattice& D, const LabeledChain& lc, const BuildOptions& opts = {});

Certificate construct_ji_top(const FiniteLattice& D, const std::vector<Elem>& Q, const LabeledChain& lc,
                             const BuildOptions& opts = {});
Certificate construct_general(const FiniteLattice& D, const std::vector<Elem>& Q, const BuildOptions& opts = {});

struct AutMode {
    bool rigid = true;
    std::optional<FiniteLattice> M0;  // group mode when set
};
Certificate stipulate_aut(const Certificate& cert, const AutMode& mode);

// Shared tail: μ/φ from a colouring over J(D) names, both Princ routes.
Certificate certify(const ColoredLattice& colored, const FiniteLattice& D, const std::vector<Elem>& Q);

}  // namespace conlat
