#pragma once

#include <functional>
#include <string>
#include <vector>

#include "conlat/certificate.hpp"

namespace conlat {

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;  // witness on failure
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool ok() const;
    const CheckResult* first_failure() const;
};

// Recomputes everything from L and D; trusts nothing else in the certificate.
VerifyReport verify_certificate(const Certificate& cert);

// The C* conditions: filter, labels equal phi(con(edge)), boundary covers
// generate ∇. label_of maps a congruence to its D element.
std::vector<CheckResult> cstar_checks(const FiniteLattice& L, const std::vector<Elem>& cstar,
                                      const std::vector<Elem>& labels,
                                      const std::function<Elem(const Congruence&)>& label_of);

// Order isomorphisms J(Con L) -> J(D), as jcon index -> D element.
std::vector<std::vector<Elem>> jcon_isomorphisms(const EdgeCongruences& ec, const FiniteLattice& D);

// All finite distributive lattices with |J| <= max_j (max_j <= 5), one per
// isomorphism type, as downset lattices of canonically generated posets.
std::vector<FiniteLattice> enumerate_distributive(int max_j);
// The posets behind enumerate_distributive: (points, strict pairs).
std::vector<std::pair<int, std::vector<std::pair<int, int>>>> enumerate_posets(int max_points);

}  // namespace conlat
