#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conlat/certificate.hpp"
#include "conlat/quasicolor.hpp"

namespace conlat {

// On-disk lattice. Canonical form: elements sorted, covers sorted, q sorted,
// labels sorted by (lower, upper); JSON keys sorted, two-space indent, one
// trailing newline.
struct LatticeDocument {
    std::string name;
    std::vector<std::string> elements;
    std::vector<std::pair<std::string, std::string>> cover;
    std::optional<std::vector<std::string>> q;
    std::optional<std::vector<std::array<std::string, 3>>> labels;  // [lower, upper, colour]
};

// Throws ParseError (with the offending field) on malformed JSON, a missing
// field, or a name that is not an element.
LatticeDocument parse_document(const std::string& text);
std::string serialize(const LatticeDocument& doc);
LatticeDocument canonical(LatticeDocument doc);

// Throws ValidationError carrying the from_cover failure.
FiniteLattice to_lattice(const LatticeDocument& doc);
// Requires labels; every cover must be labelled exactly once.
ColoredLattice to_colored(const LatticeDocument& doc);
// The q field as elements of L, validated as a candidate subset (J+ ⊆ q).
std::vector<Elem> to_candidate(const LatticeDocument& doc, const FiniteLattice& L);

LatticeDocument to_document(const FiniteLattice& L, const std::string& name);
LatticeDocument to_document(const ColoredLattice& cl, const std::string& name);

std::string export_dot(const FiniteLattice& L);
std::string export_dot(const ColoredLattice& cl);

std::string serialize_certificate(const Certificate& cert);
Certificate parse_certificate(const std::string& text);

}  // namespace conlat
