#include "conlat/chainrep.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace conlat {

FiniteLattice LabeledChain::chain_lattice() const { return chain(length() + 1); }

LabeledChain make_labeled_chain(const FiniteLattice& D, std::vector<Elem> labels) {
    auto J = join_irreducibles(D);
    std::vector<bool> hit(D.size(), false);
    for (Elem x : labels) {
        if (x < 0 || x >= D.size() || !std::binary_search(J.begin(), J.end(), x))
            throw Error("PreconditionFailed", "chain label is not join-irreducible");
        hit[x] = true;
    }
    for (Elem j : J)
        if (!hit[j]) throw Error("PreconditionFailed", "labeling misses " + D.name(j));
    return {D, std::move(labels)};
}

Elem erep(const LabeledChain& lc, int lo, int hi) {
    Elem v = lc.target.bottom();
    for (int i = lo; i < hi; ++i) v = lc.target.join(v, lc.labels[i]);
    return v;
}

std::vector<Elem> srep(const LabeledChain& lc) {
    std::set<Elem> out{lc.target.bottom()};
    for (int lo = 0; lo < lc.length(); ++lo) {
        Elem v = lc.target.bottom();
        for (int hi = lo; hi < lc.length(); ++hi) {
            v = lc.target.join(v, lc.labels[hi]);
            out.insert(v);
        }
    }
    return {out.begin(), out.end()};
}

LabeledChain extend_star(const LabeledChain& lc) {
    const auto& D = lc.target;
    if (D.size() < 2 || D.lower_covers(D.top()).size() != 1)
        throw Error("TopNotJoinIrreducible", "C* needs a join-irreducible top");
    LabeledChain out = lc;
    out.labels.push_back(D.top());
    return out;
}

LabeledChain concat(const LabeledChain& c0, const LabeledChain& c1) {
    LabeledChain out = c0;
    out.labels.insert(out.labels.end(), c1.labels.begin(), c1.labels.end());
    return out;
}

bool is_candidate_subset(const FiniteLattice& D, const std::vector<Elem>& Q) {
    std::vector<bool> in(D.size(), false);
    for (Elem x : Q) {
        if (x < 0 || x >= D.size()) return false;
        in[x] = true;
    }
    for (Elem x : j_plus(D))
        if (!in[x]) return false;
    return true;
}

LabeledChain build_chain(const FiniteLattice& D, const std::vector<Elem>& Q) {
    if (!is_candidate_subset(D, Q)) throw Error("PreconditionFailed", "Q is not a candidate subset");
    if (D.size() < 2 || D.lower_covers(D.top()).size() != 1)
        throw Error("PreconditionFailed", "build_chain needs a join-irreducible top");
    auto J = join_irreducibles(D);
    const Elem one = D.top();
    // (represented element, labels); sorted by the represented element.
    std::vector<std::pair<Elem, std::vector<Elem>>> blocks;
    std::vector<Elem> qs = Q;
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    for (Elem q : qs) {
        if (q == D.bottom() || std::binary_search(J.begin(), J.end(), q)) continue;
        bool found = false;
        for (size_t a = 0; a < J.size() && !found; ++a)
            for (size_t b = a + 1; b < J.size() && !found; ++b)
                if (D.join(J[a], J[b]) == q) {
                    blocks.push_back({q, {J[a], J[b]}});
                    found = true;
                }
        if (!found) throw Error("Unrepresentable", D.name(q) + " is not a join of two join-irreducibles");
    }
    for (Elem j : J) blocks.push_back({j, {j}});
    std::sort(blocks.begin(), blocks.end());
    std::vector<Elem> labels;
    for (size_t i = 0; i < blocks.size(); ++i) {
        if (i) labels.push_back(one);
        labels.insert(labels.end(), blocks[i].second.begin(), blocks[i].second.end());
    }
    LabeledChain lc = make_labeled_chain(D, labels);
    if (srep(lc) != qs) throw Error("Unrepresentable", "chain does not represent Q");
    return lc;
}

SearchOutcome brute_force_representable(const FiniteLattice& D, const std::vector<Elem>& Q, int max_len,
                                        std::vector<Elem>* witness) {
    auto J = join_irreducibles(D);
    std::vector<Elem> qs = Q;
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    std::vector<bool> inQ(D.size(), false);
    for (Elem q : qs) inQ[q] = true;
    std::vector<Elem> labels;
    bool found = false;
    // Intervals ending at the last edge are checked incrementally; a prefix
    // producing a non-member can never recover.
    std::function<void()> rec = [&]() {
        if (found) return;
        if (!labels.empty()) {
            std::vector<bool> hit(D.size(), false);
            for (Elem x : labels) hit[x] = true;
            bool surj = std::all_of(J.begin(), J.end(), [&](Elem j) { return hit[j]; });
            if (surj) {
                LabeledChain lc{D, labels};
                if (srep(lc) == qs) {
                    found = true;
                    if (witness) *witness = labels;
                    return;
                }
            }
        }
        if (static_cast<int>(labels.size()) == max_len) return;
        for (Elem j : J) {
            labels.push_back(j);
            Elem v = D.bottom();
            bool ok = true;
            for (int i = static_cast<int>(labels.size()) - 1; i >= 0 && ok; --i) {
                v = D.join(v, labels[i]);
                ok = inQ[v];
            }
            if (ok) rec();
            labels.pop_back();
            if (found) return;
        }
    };
    rec();
    return found ? SearchOutcome::Found : SearchOutcome::Inconclusive;
}

}  // namespace conlat
