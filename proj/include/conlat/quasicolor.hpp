#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conlat/congruence.hpp"
#include "conlat/lattice.hpp"

namespace conlat {

// A colour is a base name plus a tag; tag 0 is the original, other tags mark
// alter egos. Comparison is structural.
struct Color {
    std::string base;
    int tag = 0;

    std::string str() const;
    friend bool operator==(const Color&, const Color&) = default;
    friend auto operator<=>(const Color&, const Color&) = default;
};

class QuasiOrder {
public:
    QuasiOrder() = default;
    explicit QuasiOrder(std::vector<Color> carrier);  // identity relation

    int size() const { return static_cast<int>(carrier_.size()); }
    const std::vector<Color>& carrier() const { return carrier_; }
    const Color& color(int i) const { return carrier_[i]; }
    std::optional<int> find(const Color& c) const;
    int index(const Color& c) const;

    bool leq(int a, int b) const { return rel_[a][b]; }
    bool equiv(int a, int b) const { return rel_[a][b] && rel_[b][a]; }
    bool is_order() const;
    const std::vector<Bits>& rows() const { return rel_; }

    // Adds a ≤ b and re-closes transitively.
    void add(int a, int b);
    friend bool operator==(const QuasiOrder& a, const QuasiOrder& b) {
        return a.carrier_ == b.carrier_ && a.rel_ == b.rel_;
    }

private:
    friend QuasiOrder preogen(std::vector<Color>, const std::vector<std::pair<int, int>>&);
    void close();
    std::vector<Color> carrier_;
    std::vector<Bits> rel_;  // rel_[a][b] iff a ≤ b
};

// Reflexive-transitive closure; pairs (a,b) mean a ≤ b.
QuasiOrder preogen(std::vector<Color> carrier, const std::vector<std::pair<int, int>>& pairs);

// A map from the carrier of `source` onto the carrier of `target`.
struct Retraction {
    QuasiOrder source;
    QuasiOrder target;
    std::vector<int> map;
};
QuasiOrder dker(const Retraction& r);

struct ColoredLattice {
    FiniteLattice lattice;
    QuasiOrder colors;
    std::vector<int> cmap;  // edge index -> colour index

    const Color& color_of(Elem lo, Elem hi) const { return colors.color(cmap[lattice.edge_index(lo, hi)]); }
};

// Carrier = the distinct edge colours (sorted); order generated by the
// pairs (a ≤ b), which must name carrier colours.
ColoredLattice make_colored(FiniteLattice L, const std::vector<Color>& edge_color,
                            const std::vector<std::pair<Color, Color>>& order = {});

struct ColoringCheck {
    bool ok = true;
    std::string reason;        // "surjectivity", "C1", "C2"
    std::optional<Edge> p, q;  // witness pair
};
ColoringCheck is_quasi_coloring(const ColoredLattice& cl);
ColoringCheck is_quasi_coloring(const ColoredLattice& cl, const EdgeCongruences& ec);

// Debug revalidation threshold for compose/glue.
inline constexpr int kDebugValidateBelow = 400;

ColoredLattice compose_coloring(const ColoredLattice& cl, const Retraction& delta, bool validate = true);

struct GlueResult {
    ColoredLattice colored;
    std::vector<Elem> from1, from2;
};
// Gluing of colored lattices over filter F1 of cl1 matched with
// ideal I2 of cl2 (parallel vectors).
GlueResult glue_colored(const ColoredLattice& cl1, const std::vector<Elem>& F1, const ColoredLattice& cl2,
                        const std::vector<Elem>& I2, bool validate = true);

struct MuResult {
    EdgeCongruences ec;
    std::vector<Elem> mu;  // jcon index -> D element
    ConLattice con;
    std::vector<Elem> phi;  // con element -> D element
};
// color_elem[i] is the D element named by colour i. Throws NotAnOrder, NotIso.
MuResult mu_isomorphism(const ColoredLattice& cl, const FiniteLattice& D, const std::vector<Elem>& color_elem);
// Matches colours to D elements by base name (tag must be 0).
std::vector<Elem> colors_as_elements(const QuasiOrder& colors, const FiniteLattice& D);

// Elements of D produced by intervals: join of the colours along a maximal
// chain from a to b, for every a ≤ b (the bottom of D for a = b).
std::vector<Elem> produced_elements(const ColoredLattice& cl, const FiniteLattice& D,
                                    const std::vector<Elem>& color_elem);

// The natural colouring p ↦ con(p), colours named "j<k>".
ColoredLattice natural_coloring(const FiniteLattice& L);

}  // namespace conlat
