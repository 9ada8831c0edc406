#include "conlat/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace conlat {

bool VerifyReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerifyReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

std::vector<std::vector<Elem>> jcon_isomorphisms(const EdgeCongruences& ec, const FiniteLattice& D) {
    auto J = join_irreducibles(D);
    const int k = ec.size();
    std::vector<std::vector<Elem>> out;
    if (static_cast<int>(J.size()) != k) return out;
    std::vector<Elem> m(k, -1);
    std::vector<bool> used(J.size(), false);
    std::function<void(int)> rec = [&](int i) {
        if (i == k) {
            out.push_back(m);
            return;
        }
        for (size_t c = 0; c < J.size(); ++c) {
            if (used[c]) continue;
            bool ok = true;
            for (int j = 0; j < i && ok; ++j)
                ok = ec.contains(i, j) == D.leq(m[j], J[c]) && ec.contains(j, i) == D.leq(J[c], m[j]);
            if (!ok) continue;
            used[c] = true;
            m[i] = J[c];
            rec(i + 1);
            used[c] = false;
        }
    };
    rec(0);
    return out;
}

std::vector<CheckResult> cstar_checks(const FiniteLattice& L, const std::vector<Elem>& cstar,
                                      const std::vector<Elem>& labels,
                                      const std::function<Elem(const Congruence&)>& label_of) {
    std::vector<CheckResult> out;
    std::vector<bool> in(L.size(), false);
    for (Elem x : cstar) in[x] = true;

    CheckResult filter{"cstar-filter", true, ""};
    for (size_t i = 0; i + 1 < cstar.size() && filter.pass; ++i)
        if (!L.covers(cstar[i], cstar[i + 1])) {
            filter.pass = false;
            filter.detail = L.name(cstar[i]) + " is not covered by " + L.name(cstar[i + 1]);
        }
    if (filter.pass && (cstar.empty() || cstar.back() != L.top())) {
        filter.pass = false;
        filter.detail = "C* does not end at the top";
    }
    for (Elem x : cstar)
        for (Elem y = 0; y < L.size() && filter.pass; ++y)
            if (L.leq(x, y) && !in[y]) {
                filter.pass = false;
                filter.detail = L.name(y) + " lies above " + L.name(x) + " outside C*";
            }
    out.push_back(filter);

    CheckResult lab{"cstar-labels", true, ""};
    if (labels.size() + 1 != cstar.size()) {
        lab.pass = false;
        lab.detail = "label count mismatch";
    }
    for (size_t i = 0; lab.pass && i + 1 < cstar.size(); ++i)
        if (label_of(principal_congruence(L, cstar[i], cstar[i + 1])) != labels[i]) {
            lab.pass = false;
            lab.detail = "edge " + std::to_string(i) + " [" + L.name(cstar[i]) + "," + L.name(cstar[i + 1]) + "]";
        }
    out.push_back(lab);

    CheckResult bnd{"cstar-boundary", true, ""};
    for (Elem x : cstar)
        for (Elem y : L.lower_covers(x))
            if (bnd.pass && !in[y] && !principal_congruence(L, y, x).is_full()) {
                bnd.pass = false;
                bnd.detail = "con(" + L.name(y) + "," + L.name(x) + ") is not full";
            }
    out.push_back(bnd);
    return out;
}

VerifyReport verify_certificate(const Certificate& cert) {
    VerifyReport rep;
    const auto& L = cert.L;
    const auto& D = cert.D;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back({std::move(name), pass, pass ? "" : std::move(detail)});
    };

    bool dist = is_distributive(D);
    add("D-distributive", dist, "D is not distributive");
    std::vector<Elem> Q = cert.Q;
    std::sort(Q.begin(), Q.end());
    Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
    bool cand = std::all_of(Q.begin(), Q.end(), [&](Elem x) { return x >= 0 && x < D.size(); });
    for (Elem x : j_plus(D)) cand = cand && std::binary_search(Q.begin(), Q.end(), x);
    add("Q-candidate", cand, "Q misses part of J+(D)");
    if (!dist || !cand) return rep;

    if (L.size() == 1) {
        bool ok = D.size() == 1 && cert.phi.size() == 1;
        add("con-iso", ok, "a one-element lattice needs a one-element D");
        add("princ", ok && Q.size() == 1);
        return rep;
    }

    auto ec = edge_congruences(L);
    ConLattice con;
    try {
        con = congruence_lattice(L);
    } catch (const Error& e) {
        add("con-size", false, e.what());
        return rep;
    }
    add("con-size", con.lattice.size() == D.size(),
        "|Con L| = " + std::to_string(con.lattice.size()) + ", |D| = " + std::to_string(D.size()));

    // phi as given: a bijection from the recomputed Con(L) onto D, order both ways.
    std::vector<Elem> phi(con.dict.size(), -1);
    bool phi_ok = cert.phi.size() == con.dict.size();
    std::string phi_bad = phi_ok ? "" : "phi has the wrong number of entries";
    for (const auto& [th, d] : cert.phi) {
        auto it = std::find(con.dict.begin(), con.dict.end(), th);
        if (it == con.dict.end()) {
            if (phi_ok) phi_bad = "phi names a partition that is not a congruence of L";
            phi_ok = false;
            continue;
        }
        phi[it - con.dict.begin()] = d;
    }
    std::vector<bool> hit(D.size(), false);
    for (size_t c = 0; phi_ok && c < phi.size(); ++c) {
        if (phi[c] < 0 || phi[c] >= D.size() || hit[phi[c]]) {
            phi_ok = false;
            phi_bad = "phi is not a bijection (at " + con.lattice.name(static_cast<Elem>(c)) + ")";
            break;
        }
        hit[phi[c]] = true;
    }
    for (size_t a = 0; phi_ok && a < phi.size(); ++a)
        for (size_t b = 0; phi_ok && b < phi.size(); ++b)
            if (con.dict[a].refines(con.dict[b]) != D.leq(phi[a], phi[b])) {
                phi_ok = false;
                phi_bad = "order not preserved: " + con.lattice.name(static_cast<Elem>(a)) + " vs " +
                          con.lattice.name(static_cast<Elem>(b)) + " -> " + D.name(phi[a]) + " vs " + D.name(phi[b]);
            }
    add("phi-iso", phi_ok, phi_bad);

    // Independent search on join-irreducible skeletons; phi must be one of the hits.
    auto isos = jcon_isomorphisms(ec, D);
    add("con-iso-exists", !isos.empty(), "no order isomorphism J(Con L) -> J(D)");
    if (!phi_ok) return rep;
    std::vector<Elem> phi_j(ec.size());
    for (int j = 0; j < ec.size(); ++j) {
        auto it = std::find(con.dict.begin(), con.dict.end(), ec.jcon[j]);
        phi_j[j] = phi[it - con.dict.begin()];
    }
    add("phi-matches-search", std::find(isos.begin(), isos.end(), phi_j) != isos.end(),
        "phi restricted to J(Con L) is not among the searched isomorphisms");

    auto label_of = [&](const Congruence& th) {
        auto it = std::find(con.dict.begin(), con.dict.end(), th);
        return it == con.dict.end() ? Elem{-1} : phi[it - con.dict.begin()];
    };

    bool col_ok = cert.edge_label.size() == L.edges().size();
    std::string col_bad = col_ok ? "" : "edge label count mismatch";
    for (size_t e = 0; col_ok && e < L.edges().size(); ++e)
        if (phi_j[ec.edge_class[e]] != cert.edge_label[e]) {
            col_ok = false;
            auto E = L.edges()[e];
            col_bad = "edge [" + L.name(E.lo) + "," + L.name(E.hi) + "] labelled " + D.name(cert.edge_label[e]) +
                      " but generates " + D.name(phi_j[ec.edge_class[e]]);
        }
    add("coloring", col_ok, col_bad);

    std::set<Elem> princ;
    for (const auto& ds : principal_downsets(L, ec)) {
        Elem v = D.bottom();
        for (int j = 0; j < ec.size(); ++j)
            if (ds[j]) v = D.join(v, phi_j[j]);
        princ.insert(v);
    }
    std::vector<Elem> P(princ.begin(), princ.end());
    std::string diff;
    for (Elem x : P)
        if (!std::binary_search(Q.begin(), Q.end(), x)) diff += " extra " + D.name(x);
    for (Elem x : Q)
        if (!princ.count(x)) diff += " missing " + D.name(x);
    add("princ-equals-Q", P == Q, diff);

    if (cert.ji_top) {
        for (auto& c : cstar_checks(L, cert.cstar, cert.cstar_labels, label_of)) rep.checks.push_back(c);
        add("01-separating", is_01_separating(L), "some element does not separate");
    }
    return rep;
}

std::vector<std::pair<int, std::vector<std::pair<int, int>>>> enumerate_posets(int max_points) {
    if (max_points > 5) throw Error("TooLarge", "poset enumeration supports at most 5 points");
    std::vector<std::pair<int, std::vector<std::pair<int, int>>>> out;
    for (int k = 0; k <= std::max(0, max_points); ++k) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) slots.emplace_back(i, j);
        std::vector<int> perm(k);
        // canonical code: least adjacency word over all relabellings
        std::map<unsigned, std::vector<std::pair<int, int>>> seen;
        for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
            std::vector<std::vector<bool>> lt(k, std::vector<bool>(k, false));
            for (size_t s = 0; s < slots.size(); ++s)
                if (mask >> s & 1) lt[slots[s].first][slots[s].second] = true;
            bool transitive = true;
            for (int a = 0; a < k && transitive; ++a)
                for (int b = 0; b < k && transitive; ++b)
                    for (int c = 0; c < k; ++c)
                        if (lt[a][b] && lt[b][c] && !lt[a][c]) transitive = false;
            if (!transitive) continue;
            std::iota(perm.begin(), perm.end(), 0);
            unsigned best = ~0u;
            do {
                unsigned code = 0;
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) code = code << 1 | (lt[perm[a]][perm[b]] ? 1u : 0u);
                best = std::min(best, code);
            } while (std::next_permutation(perm.begin(), perm.end()));
            if (seen.count(best)) continue;
            std::vector<std::pair<int, int>> rel;
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    if (lt[a][b]) rel.emplace_back(a, b);
            seen.emplace(best, rel);
        }
        for (auto& [code, rel] : seen) out.emplace_back(k, rel);
    }
    return out;
}

std::vector<FiniteLattice> enumerate_distributive(int max_j) {
    if (max_j > 5) throw Error("TooLarge", "enumerate_distributive supports max_j <= 5");
    std::vector<FiniteLattice> out;
    if (max_j < 0) return out;
    for (const auto& [k, rel] : enumerate_posets(max_j)) out.push_back(downset_lattice(k, rel));
    return out;
}

}  // namespace conlat
