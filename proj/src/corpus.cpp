#include "conlat/corpus.hpp"

#include <algorithm>

namespace conlat {

std::vector<std::vector<Elem>> candidate_subsets(const FiniteLattice& D) {
    auto Jp = j_plus(D);
    std::sort(Jp.begin(), Jp.end());
    std::vector<Elem> rest;
    for (Elem x = 0; x < D.size(); ++x)
        if (!std::binary_search(Jp.begin(), Jp.end(), x)) rest.push_back(x);
    if (rest.size() > 20) throw Error("TooLarge", "too many candidate subsets");
    std::vector<std::vector<Elem>> out;
    for (unsigned long m = 0; m < (1ul << rest.size()); ++m) {
        auto Q = Jp;
        for (size_t i = 0; i < rest.size(); ++i)
            if (m >> i & 1) Q.push_back(rest[i]);
        std::sort(Q.begin(), Q.end());
        out.push_back(std::move(Q));
    }
    return out;
}

bool CorpusCase::passed() const {
    if (!condition) return !cert && error_kind == "ConditionViolated";
    return cert && report.ok();
}

void run_corpus(const CorpusOptions& opts, const std::function<void(const CorpusCase&)>& visit) {
    for (auto& D : enumerate_distributive(opts.max_j)) {
        bool cond = condition_iii(D).holds;
        if (!cond && opts.skip_failing) continue;
        // a group needs a lattice with at least one thick edge
        if (opts.aut && opts.aut->M0 && D.size() == 1) continue;
        auto Jp = j_plus(D);
        std::sort(Jp.begin(), Jp.end());
        std::vector<std::vector<Elem>> qs{Jp};
        if (opts.all_q && cond) qs = candidate_subsets(D);
        else if (opts.all_q) {
            // refusal does not look at Q; the two extremes are enough
            std::vector<Elem> all(D.size());
            for (Elem x = 0; x < D.size(); ++x) all[x] = x;
            if (all != Jp) qs.push_back(all);
        }
        for (auto& Q : qs) {
            CorpusCase c;
            c.D = D;
            c.Q = std::move(Q);
            c.condition = cond;
            try {
                auto cert = construct_general(D, c.Q);
                if (opts.aut) cert = stipulate_aut(cert, *opts.aut);
                c.report = verify_certificate(cert);
                c.cert = std::move(cert);
            } catch (const Error& e) {
                c.error = e.what();
                c.error_kind = e.kind();
            }
            visit(c);
        }
    }
}

}  // namespace conlat
