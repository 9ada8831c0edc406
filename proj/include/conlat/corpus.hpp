#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conlat/pipeline.hpp"
#include "conlat/verify.hpp"

namespace conlat {

// Every Q with J+(D) ⊆ Q ⊆ D, sorted, in increasing order of the extra-element mask.
std::vector<std::vector<Elem>> candidate_subsets(const FiniteLattice& D);

struct CorpusCase {
    FiniteLattice D;
    std::vector<Elem> Q;
    bool condition = false;          // D planar with at most one join-reducible coatom
    std::optional<Certificate> cert;
    VerifyReport report;
    std::string error;               // Error::what() when construct threw
    std::string error_kind;

    // A case meeting the condition passes with a verified certificate; any other
    // case passes only by refusing with ConditionViolated.
    bool passed() const;
};

struct CorpusOptions {
    int max_j = 3;
    bool all_q = true;  // for D failing the condition: only J+ and D
    std::optional<AutMode> aut;
    bool skip_failing = false;  // omit D failing the condition
};

void run_corpus(const CorpusOptions& opts, const std::function<void(const CorpusCase&)>& visit);

}  // namespace conlat
