#include "conlat/pipeline.hpp"

#include <algorithm>
#include <set>

#include "conlat/group.hpp"
#include "conlat/verify.hpp"

namespace conlat {

namespace {

std::vector<Elem> sorted_unique(std::vector<Elem> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool has(const std::vector<Elem>& sorted, Elem x) { return std::binary_search(sorted.begin(), sorted.end(), x); }

// J(D) as a colour order, names with tag 0.
QuasiOrder jd_order(const FiniteLattice& D) {
    auto J = join_irreducibles(D);
    std::vector<Color> carrier;
    for (Elem j : J) carrier.push_back({D.name(j), 0});
    std::sort(carrier.begin(), carrier.end());
    std::vector<std::pair<int, int>> pairs;
    for (Elem a : J)
        for (Elem b : J)
            if (D.leq(a, b)) {
                int ia = static_cast<int>(std::lower_bound(carrier.begin(), carrier.end(), Color{D.name(a), 0}) - carrier.begin());
                int ib = static_cast<int>(std::lower_bound(carrier.begin(), carrier.end(), Color{D.name(b), 0}) - carrier.begin());
                pairs.emplace_back(ia, ib);
            }
    return preogen(carrier, pairs);
}

void check_coloring(const ColoredLattice& cl, const BuildOptions& opts, const std::string& step) {
    if (!opts.validate_steps || cl.lattice.size() >= kDebugValidateBelow) return;
    auto chk = is_quasi_coloring(cl);
    if (!chk.ok) throw Error("VerificationFailed", step + ": colouring fails " + chk.reason);
}

void require_distributive_candidate(const FiniteLattice& D, const std::vector<Elem>& Q) {
    if (!is_distributive(D)) throw Error("NotDistributive", "D is not distributive");
    if (!is_candidate_subset(D, Q)) throw Error("PreconditionFailed", "Q does not contain J+(D)");
}

std::vector<std::string> names_of(const FiniteLattice& D, const std::vector<Elem>& xs) {
    std::vector<std::string> out;
    for (Elem x : xs) out.push_back(D.name(x));
    return out;
}

std::string join_names(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ",") + x;
    return s;
}

}  // namespace

bool chain_cover_generates(const FiniteLattice& D, const std::vector<std::vector<Elem>>& chains) {
    auto J = join_irreducibles(D);
    std::vector<Color> carrier;
    for (Elem j : J) carrier.push_back({D.name(j), 0});
    auto at = [&](Elem x) { return static_cast<int>(std::find(J.begin(), J.end(), x) - J.begin()); };
    std::vector<std::pair<int, int>> pairs;
    const bool top_ji = has(J, D.top());
    std::vector<bool> on(J.size(), false);
    for (const auto& ch : chains)
        for (Elem x : ch) on[at(x)] = true;
    for (size_t a = 0; a < J.size(); ++a)
        if (!on[a] && J[a] != D.top()) return false;
    for (const auto& ch : chains)
        for (size_t k = 0; k + 1 < ch.size(); ++k) pairs.emplace_back(at(ch[k]), at(ch[k + 1]));
    if (top_ji)
        for (Elem j : J) pairs.emplace_back(at(j), at(D.top()));
    auto gen = preogen(carrier, pairs);
    for (size_t a = 0; a < J.size(); ++a)
        for (size_t b = 0; b < J.size(); ++b)
            if (gen.leq(static_cast<int>(a), static_cast<int>(b)) != D.leq(J[a], J[b])) return false;
    return true;
}

std::vector<std::vector<Elem>> chain_cover(const FiniteLattice& D) {
    std::vector<Elem> Jp;
    for (Elem j : join_irreducibles(D))
        if (j != D.top()) Jp.push_back(j);
    std::sort(Jp.begin(), Jp.end(), [&](Elem a, Elem b) { return std::pair(D.height(a), a) < std::pair(D.height(b), b); });
    const int n = static_cast<int>(Jp.size());
    // covers inside J(D)∖{1}
    std::vector<std::vector<int>> pred(n);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
            if (!D.lt(Jp[a], Jp[b])) continue;
            bool cover = true;
            for (int c = 0; c < n && cover; ++c)
                if (D.lt(Jp[a], Jp[c]) && D.lt(Jp[c], Jp[b])) cover = false;
            if (cover) pred[b].push_back(a);
        }
    std::vector<std::vector<Elem>> chains;
    std::vector<bool> covered(n, false);
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    while (true) {
        // Heaviest path in the cover graph: new points plus new cover pairs.
        std::vector<int> best(n), prev(n, -1);
        for (int x = 0; x < n; ++x) {
            best[x] = covered[x] ? 0 : 1;
            int add = 0;
            for (int y : pred[x]) {
                int w = best[y] + (reach[y][x] ? 0 : 1);
                if (w > add) {
                    add = w;
                    prev[x] = y;
                }
            }
            best[x] += add;
        }
        int end = -1;
        for (int x = 0; x < n; ++x)
            if (best[x] > 0 && (end < 0 || best[x] > best[end])) end = x;
        if (end < 0) break;
        std::vector<Elem> ch;
        for (int x = end; x >= 0; x = prev[x]) ch.push_back(x);
        std::reverse(ch.begin(), ch.end());
        for (size_t k = 0; k < ch.size(); ++k) {
            covered[ch[k]] = true;
            for (size_t l = k + 1; l < ch.size(); ++l) reach[ch[k]][ch[l]] = true;
        }
        for (int k = 0; k < n; ++k)
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (reach[a][k] && reach[k][b]) reach[a][b] = true;
        for (auto& x : ch) x = Jp[x];
        chains.push_back(ch);
    }
    if (!chain_cover_generates(D, chains)) throw Error("InternalError", "chain cover does not generate J(D)");
    return chains;
}

FramePlan make_plan(const FiniteLattice& D, const LabeledChain& lc, const BuildOptions& opts) {
    auto J = join_irreducibles(D);
    if (D.size() < 2 || !has(J, D.top())) throw Error("PreconditionFailed", "the frame needs 1_D join-irreducible");
    FramePlan plan{D, chain_cover(D), lc, opts.cap ? *opts.cap : rigid_simple(0)};
    if (plan.cap.size() < 3 || !is_simple(plan.cap)) throw Error("CapNotSimple", "cap must be simple with at least 3 elements");
    return plan;
}

Elem FrameBuild::add_element(const std::string& name) {
    names.push_back(name);
    return static_cast<Elem>(names.size() - 1);
}

void FrameBuild::add_edge(Elem lo, Elem hi, const Color& c) {
    rel.emplace_back(lo, hi);
    ecol[{lo, hi}] = c;
}

ColoredLattice FrameBuild::materialize() const {
    auto L = build_lattice(names, rel);
    for (const auto& [pr, c] : ecol)
        if (!L.covers(pr.first, pr.second))
            throw Error("InternalError", "coloured pair " + L.name(pr.first) + " < " + L.name(pr.second) + " is not a cover");
    std::vector<Color> ec;
    for (auto e : L.edges()) {
        auto it = ecol.find({e.lo, e.hi});
        if (it == ecol.end()) throw Error("InternalError", "uncoloured edge " + L.name(e.lo) + "-" + L.name(e.hi));
        ec.push_back(it->second);
    }
    return make_colored(std::move(L), ec, order);
}

FrameBuild build_frame(const FramePlan& plan, const BuildOptions& opts) {
    const auto& D = plan.D;
    FrameBuild fb;
    fb.D = D;
    fb.pe = {D.name(D.top()), 0};
    fb.alter[fb.pe] = D.top();
    const auto& cap = plan.cap;
    std::vector<Elem> cap_at(cap.size());
    for (Elem x = 0; x < cap.size(); ++x) cap_at[x] = fb.add_element("cap:" + cap.name(x));
    for (auto e : cap.edges()) fb.add_edge(cap_at[e.lo], cap_at[e.hi], fb.pe);
    fb.o = cap_at[cap.bottom()];
    fb.i = cap_at[cap.top()];

    auto insert = [&](Gadget g, const std::vector<Color>& recolor_from, const Color& recolor_to) {
        const int k = static_cast<int>(fb.branches.size());
        const auto& G = g.colored.lattice;
        std::vector<Elem> at(G.size());
        for (Elem x = 0; x < G.size(); ++x) at[x] = fb.add_element("B" + std::to_string(k) + ":" + G.name(x));
        std::map<Color, int> used;
        for (auto e : G.edges()) {
            Color c = g.colored.color_of(e.lo, e.hi);
            if (std::find(recolor_from.begin(), recolor_from.end(), c) != recolor_from.end()) c = recolor_to;
            fb.add_edge(at[e.lo], at[e.hi], c);
            ++used[c];
        }
        fb.add_edge(fb.o, at[G.bottom()], fb.pe);
        fb.add_edge(at[G.top()], fb.i, fb.pe);
        for (auto e : g.all("thick")) fb.thick.push_back({at[e.lo], at[e.hi]});
        fb.branches.push_back(std::move(g));
        fb.branch_at.push_back(at);
        fb.branch_colors.push_back(used);
    };

    for (size_t c = 0; c < plan.chains.size(); ++c) {
        std::vector<Color> xs;
        for (Elem y : plan.chains[c]) {
            xs.push_back({D.name(y), static_cast<int>(c) + 1});
            fb.alter[xs.back()] = y;
            fb.order.emplace_back(xs.back(), fb.pe);
        }
        for (size_t k = 0; k + 1 < xs.size(); ++k) fb.order.emplace_back(xs[k], xs[k + 1]);
        insert(snake(xs), {}, fb.pe);
    }

    // S_t: 1_D-labelled edges get the top colour itself and a pin atom
    // below their upper end, which makes them generate ∇.
    auto br = branch_from_chain(plan.labeled_chain);
    std::vector<Color> top_colors;
    const auto& carrier = br.gadget.colored.colors.carrier();
    for (size_t c = 0; c < carrier.size(); ++c) {
        if (br.origin[c] == D.top()) {
            top_colors.push_back(carrier[c]);
        } else {
            fb.alter[carrier[c]] = br.origin[c];
            fb.order.emplace_back(carrier[c], fb.pe);
        }
    }
    insert(br.gadget, top_colors, fb.pe);
    const auto& st = fb.branch_at.back();
    const auto& labels = plan.labeled_chain.labels;
    for (size_t j = 0; j < labels.size(); ++j) {
        if (labels[j] != D.top()) continue;
        Elem z = fb.add_element("pin" + std::to_string(j));
        fb.add_edge(fb.o, z, fb.pe);
        fb.add_edge(z, st[j + 1], fb.pe);
    }
    fb.cstar.assign(st.begin(), st.end());
    fb.cstar.push_back(fb.i);
    fb.cstar_labels = labels;
    fb.cstar_labels.push_back(D.top());
    fb.log.push_back("frame: " + std::to_string(plan.chains.size()) + " snake branches, S_t of length " +
                     std::to_string(labels.size()) + ", cap of size " + std::to_string(cap.size()));

    if (opts.validate_steps && static_cast<int>(fb.names.size()) < kDebugValidateBelow) {
        auto cl = fb.materialize();
        check_coloring(cl, opts, "frame");
        if (!is_01_separating(cl.lattice)) throw Error("VerificationFailed", "frame is not {0,1}-separating");
    }
    return fb;
}

namespace {

int branch_of(const FrameBuild& fb, const Color& c) {
    for (size_t b = 0; b < fb.branch_colors.size(); ++b)
        if (fb.branch_colors[b].count(c)) return static_cast<int>(b);
    throw Error("ColorNotFound", "no branch carries " + c.str());
}

}  // namespace

std::vector<std::pair<Color, Color>> epsilon_pairs(const FrameBuild& fb) {
    std::map<Elem, std::vector<Color>> classes;
    for (const auto& [c, x] : fb.alter)
        if (c != fb.pe) classes[x].push_back(c);
    std::vector<std::pair<Color, Color>> out;
    for (auto& [x, cs] : classes) {
        // snake copies have positive tags; the least one is the centre
        auto centre = std::find_if(cs.begin(), cs.end(), [](const Color& c) { return c.tag > 0; });
        if (centre == cs.end()) {
            if (cs.size() > 1) throw Error("UnwitnessablePair", "alter egos of " + fb.D.name(x) + " live in S_t only");
            continue;
        }
        for (const auto& c : cs)
            if (c != *centre) {
                if (branch_of(fb, c) == branch_of(fb, *centre))
                    throw Error("UnwitnessablePair", c.str() + " and " + centre->str() + " share a branch");
                out.emplace_back(*centre, c);
            }
    }
    return out;
}

void add_flag(FrameBuild& fb, const Color& g0, const Color& h0, const BuildOptions& opts) {
    int bi = branch_of(fb, g0), bj = branch_of(fb, h0);
    if (bi == bj) throw Error("SameBranch", g0.str() + " and " + h0.str() + " are in one branch");
    Color g = g0, h = h0;
    if (bi > bj) {
        std::swap(bi, bj);
        std::swap(g, h);
    }
    const int l = fb.flags++;
    const std::string tag = "F" + std::to_string(l) + ":";
    auto side = [&](int b, const Color& c, const std::string& nm) {
        const auto& G = fb.branches[b].colored.lattice;
        const auto& at = fb.branch_at[b];
        std::optional<Edge> pick;
        for (auto e : G.edges()) {
            if (fb.ecol.at({at[e.lo], at[e.hi]}) != c) continue;
            if (!pick || std::pair(G.height(e.lo), e) < std::pair(G.height(pick->lo), *pick)) pick = e;
        }
        if (!pick) throw Error("ColorNotFound", c.str());
        // Double [bottom, b] below the branch.
        std::vector<Elem> copy(G.size(), -1);
        for (Elem x = 0; x < G.size(); ++x)
            if (G.leq(x, pick->hi)) copy[x] = fb.add_element(tag + nm + ":" + G.name(x));
        for (auto e : G.edges())
            if (copy[e.lo] >= 0 && copy[e.hi] >= 0) fb.add_edge(copy[e.lo], copy[e.hi], fb.ecol.at({at[e.lo], at[e.hi]}));
        for (Elem x = 0; x < G.size(); ++x)
            if (copy[x] >= 0) fb.add_edge(copy[x], at[x], fb.pe);
        fb.add_edge(fb.o, copy[G.bottom()], fb.pe);
        // o ≺ u′ ≺ u now, so [o,u] stops being a cover.
        fb.ecol.erase({fb.o, at[G.bottom()]});
        std::erase(fb.rel, std::pair(fb.o, at[G.bottom()]));
        return std::pair(copy[pick->lo], copy[pick->hi]);
    };
    auto [ai, bi_] = side(bi, g, "g");
    auto [aj, bj_] = side(bj, h, "h");
    Elem e = fb.add_element(tag + "e");
    Elem f = fb.add_element(tag + "f");
    fb.add_edge(ai, e, fb.pe);
    fb.add_edge(aj, e, fb.pe);
    fb.add_edge(bi_, f, fb.pe);
    fb.add_edge(bj_, f, fb.pe);
    fb.add_edge(e, f, g);
    fb.add_edge(f, fb.i, fb.pe);
    fb.order.emplace_back(g, h);
    fb.order.emplace_back(h, g);
    fb.log.push_back("flag " + std::to_string(l) + ": " + g.str() + " ~ " + h.str() + " (branches " +
                     std::to_string(bi) + ", " + std::to_string(bj) + ")");
    if (opts.validate_steps && static_cast<int>(fb.names.size()) < kDebugValidateBelow)
        check_coloring(fb.materialize(), opts, "flag " + std::to_string(l));
}

JiTopResult build_ji_top(const FiniteLattice& D, const LabeledChain& lc, const BuildOptions& opts) {
    auto plan = make_plan(D, lc, opts);
    JiTopResult r{{}, {}, build_frame(plan, opts)};
    for (const auto& [g, h] : epsilon_pairs(r.frame)) add_flag(r.frame, g, h, opts);
    r.eta = r.frame.materialize();
    check_coloring(r.eta, opts, "eta");
    auto target = jd_order(D);
    std::vector<int> map;
    for (const auto& c : r.eta.colors.carrier()) map.push_back(target.index({D.name(r.frame.alter.at(c)), 0}));
    r.colored = compose_coloring(r.eta, {r.eta.colors, target, map}, opts.validate_steps);
    return r;
}

Certificate certify(const ColoredLattice& colored, const FiniteLattice& D, const std::vector<Elem>& Q) {
    auto color_elem = colors_as_elements(colored.colors, D);
    auto mr = mu_isomorphism(colored, D, color_elem);
    Certificate cert;
    cert.L = colored.lattice;
    cert.D = D;
    cert.Q = sorted_unique(Q);
    for (size_t c = 0; c < mr.con.dict.size(); ++c) cert.phi.emplace_back(mr.con.dict[c], mr.phi[c]);
    for (int c : colored.cmap) cert.edge_label.push_back(color_elem[c]);

    auto produced = sorted_unique(produced_elements(colored, D, color_elem));
    if (produced != cert.Q)
        throw Error("VerificationFailed", "interval-produced elements {" + join_names(names_of(D, produced)) +
                                              "} differ from Q {" + join_names(names_of(D, cert.Q)) + "}");
    std::vector<Elem> raw;
    for (const auto& ds : principal_downsets(cert.L, mr.ec)) {
        Elem v = D.bottom();
        for (int j = 0; j < mr.ec.size(); ++j)
            if (ds[j]) v = D.join(v, mr.mu[j]);
        raw.push_back(v);
    }
    if (sorted_unique(raw) != produced) throw Error("VerificationFailed", "the two Princ routes disagree");
    return cert;
}

namespace {

void check_cstar(const Certificate& cert) {
    auto label_of = [&](const Congruence& th) {
        for (const auto& [c, d] : cert.phi)
            if (c == th) return d;
        return Elem{-1};
    };
    for (const auto& c : cstar_checks(cert.L, cert.cstar, cert.cstar_labels, label_of))
        if (!c.pass) throw Error("VerificationFailed", c.name + ": " + c.detail);
}

}  // namespace

Certificate construct_ji_top(const FiniteLattice& D, const std::vector<Elem>& Q, const LabeledChain& lc,
                             const BuildOptions& opts) {
    require_distributive_candidate(D, Q);
    if (D.size() < 2 || !has(join_irreducibles(D), D.top()))
        throw Error("PreconditionFailed", "construct_ji_top needs |D| > 1 and 1_D join-irreducible");
    if (srep(lc) != sorted_unique(Q)) throw Error("PreconditionFailed", "the chain does not represent Q");
    auto r = build_ji_top(D, lc, opts);
    auto cert = certify(r.colored, D, Q);
    cert.ji_top = true;
    cert.cstar = r.frame.cstar;
    cert.cstar_labels = r.frame.cstar_labels;
    cert.thick = r.frame.thick;
    cert.log = r.frame.log;
    cert.log.push_back("ji-top build: |L| = " + std::to_string(cert.L.size()));
    check_cstar(cert);
    return cert;
}

Certificate construct_general(const FiniteLattice& D, const std::vector<Elem>& Q, const BuildOptions& opts) {
    require_distributive_candidate(D, Q);
    if (!condition_iii(D).holds) throw Error("ConditionViolated", "D is not planar or has two join-reducible coatoms");
    if (D.size() == 1) {
        Certificate cert;
        cert.L = build_lattice({"0"}, {});
        cert.D = D;
        cert.Q = {D.bottom()};
        cert.phi = {{Congruence::identity(1), D.bottom()}};
        cert.log = {"trivial: |D| = 1"};
        return cert;
    }
    auto J = join_irreducibles(D);
    if (has(J, D.top())) return construct_ji_top(D, Q, build_chain(D, Q), opts);

    auto td = decompose_top(D);
    const auto& Dp = td.d_prime;
    std::vector<Elem> to_dp(D.size(), -1);
    for (Elem x = 0; x < Dp.size(); ++x) to_dp[td.d_prime_map[x]] = x;
    auto Qs = sorted_unique(Q);
    std::vector<Elem> Qp;
    for (Elem x = 0; x < Dp.size(); ++x)
        if (has(Qs, td.d_prime_map[x])) Qp.push_back(x);

    // Q ∩ ↑q other than q and 1: joins a ∨ q with a ∈ J(D′).
    std::vector<Elem> as;
    for (Elem y : Qs) {
        if (!D.leq(td.q, y) || y == td.q || y == D.top()) continue;
        Elem pick = -1;
        for (Elem a : J)
            if (to_dp[a] >= 0 && D.join(a, td.q) == y && (pick < 0 || to_dp[a] < to_dp[pick])) pick = a;
        if (pick < 0) throw Error("InternalError", D.name(y) + " is not q joined with a join-irreducible");
        as.push_back(pick);
    }
    std::vector<Elem> below_q;
    for (Elem a : J)
        if (D.lt(a, td.q)) below_q.push_back(a);
    std::vector<Elem> handles;  // maximal elements of J(D) ∩ ↓q
    for (Elem a : below_q)
        if (std::none_of(below_q.begin(), below_q.end(), [&](Elem b) { return D.lt(a, b); })) handles.push_back(a);
    if (handles.size() > 2) throw Error("InternalError", "more than two maximal join-irreducibles below q");
    const bool twin = handles.size() == 1;  // f is an alter ego of e
    if (twin) handles.push_back(handles[0]);

    auto C0 = build_chain(Dp, Qp);
    std::vector<Elem> c1;
    const Elem pp = Dp.top();
    for (Elem h : handles) c1.insert(c1.end(), {pp, to_dp[h]});
    for (Elem a : as) c1.insert(c1.end(), {pp, to_dp[a]});
    auto C = concat(C0, LabeledChain{Dp, c1});
    if (srep(C) != Qp) throw Error("InternalError", "C0 + C1 does not represent Q'");

    auto r = build_ji_top(Dp, C, opts);
    // L′ on its own satisfies the C* conditions.
    {
        auto sub = certify(r.colored, Dp, Qp);
        sub.cstar = r.frame.cstar;
        sub.cstar_labels = r.frame.cstar_labels;
        check_cstar(sub);
    }

    const std::string pname = D.name(td.p);
    std::vector<Color> pcols;
    for (size_t k = 0; k <= handles.size() + as.size(); ++k) pcols.push_back({pname, static_cast<int>(k) + 1});
    std::optional<Color> e, f;
    if (!handles.empty()) {
        e = Color{D.name(handles[0]), 0};
        f = twin ? Color{D.name(handles[0]), 1} : Color{D.name(handles[1]), 0};
    }
    std::vector<Color> acols;
    for (Elem a : as) acols.push_back({D.name(a), 0});
    auto sk = s_k_gadget(pcols, e, f, {D.name(td.q), 0}, acols);

    std::vector<Elem> F1(r.frame.cstar.begin() + C0.length(), r.frame.cstar.end());
    auto I2 = spine_elements(sk);
    if (F1.size() != I2.size()) throw Error("InternalError", "S_k spine does not match the C1 filter");
    auto gl = glue_colored(r.colored, F1, sk.colored, I2, opts.validate_steps);

    auto target = jd_order(D);
    std::vector<int> map;
    for (const auto& c : gl.colored.colors.carrier()) map.push_back(target.index({c.base, 0}));
    auto colored = compose_coloring(gl.colored, {gl.colored.colors, target, map}, opts.validate_steps);

    auto cert = certify(colored, D, Q);
    for (auto t : r.frame.thick) cert.thick.push_back({gl.from1[t.lo], gl.from1[t.hi]});
    for (auto t : sk.all("thick")) cert.thick.push_back({gl.from2[t.lo], gl.from2[t.hi]});
    cert.log = r.frame.log;
    cert.log.push_back("decomposition: p = " + pname + ", q = " + D.name(td.q) + ", k = " + std::to_string(as.size()) +
                       (handles.empty() ? ", no e/f" : twin ? ", f is an alter ego of e" : ""));
    cert.log.push_back("L' has " + std::to_string(r.colored.lattice.size()) + " elements; glued S_k with " +
                       std::to_string(sk.colored.lattice.size()) + "; |L| = " + std::to_string(cert.L.size()));
    return cert;
}

Certificate stipulate_aut(const Certificate& cert, const AutMode& mode) {
    const auto& D = cert.D;
    if (mode.M0 && (mode.M0->size() < 2 || !is_simple(*mode.M0))) throw Error("MNotSimple", "M0 must be simple");
    if (D.size() == 1) {
        if (mode.M0 && automorphism_group(*mode.M0).order > 1)
            throw Error("PreconditionFailed", "|D| = 1 admits only the trivial group");
        return cert;
    }
    std::vector<Color> ec;
    for (Elem d : cert.edge_label) ec.push_back({D.name(d), 0});
    std::vector<std::pair<Color, Color>> order;
    for (Elem a : join_irreducibles(D))
        for (Elem b : join_irreducibles(D))
            if (D.lt(a, b)) order.emplace_back(Color{D.name(a), 0}, Color{D.name(b), 0});
    auto cl = make_colored(cert.L, ec, order);
    auto log = cert.log;
    int next = 1;
    std::vector<bool> inner(cl.lattice.size(), false), m0_inner(cl.lattice.size(), false);
    std::vector<bool> on_cstar(cl.lattice.size(), false);
    for (Elem x : cert.cstar) on_cstar[x] = true;

    auto substitute = [&](Edge p, const FiniteLattice& M, bool is_m0) {
        const int before = cl.lattice.size();
        cl = replace_prime_interval(cl, p, M);
        inner.resize(cl.lattice.size(), true);
        m0_inner.resize(cl.lattice.size(), is_m0);
        on_cstar.resize(cl.lattice.size(), false);
        log.push_back("substituted [" + cl.lattice.name(p.lo) + "," + cl.lattice.name(p.hi) + "] by a " +
                      std::to_string(M.size()) + "-element " + (is_m0 ? "M0" : "rigid lattice") + " (+" +
                      std::to_string(cl.lattice.size() - before) + ")");
    };
    auto usable = [&](Edge p, const EdgeCongruences& ec2) {
        return !inner[p.lo] && !inner[p.hi] && !(on_cstar[p.lo] && on_cstar[p.hi]) &&
               substitution_safe(cl.lattice, ec2, p);
    };

    auto thick = cert.thick;
    if (mode.M0) {
        std::optional<Edge> target;
        if (!thick.empty()) {
            target = thick.front();
            thick.erase(thick.begin());
        } else {
            auto ec2 = edge_congruences(cl.lattice);
            for (auto e : cl.lattice.edges())
                if (usable(e, ec2)) {
                    target = e;
                    break;
                }
        }
        if (!target) throw Error("AutMismatch", "no safe edge for M0");
        substitute(*target, *mode.M0, true);
    }
    for (auto t : thick) substitute(t, rigid_simple(next++), false);

    for (int round = 0;; ++round) {
        auto G = automorphism_group(cl.lattice);
        std::vector<Elem> moved;
        for (const auto& g : G.generators)
            for (Elem x = 0; x < cl.lattice.size(); ++x)
                if (g[x] != x && !m0_inner[x]) moved.push_back(x);
        moved = sorted_unique(moved);
        if (moved.empty()) break;
        if (round >= 64) throw Error("AutMismatch", "symmetry breaking did not converge");
        auto ec2 = edge_congruences(cl.lattice);
        std::optional<Edge> target;
        for (Elem x : moved) {
            for (Elem y : cl.lattice.upper_covers(x))
                if (!target && usable({x, y}, ec2)) target = Edge{x, y};
            for (Elem y : cl.lattice.lower_covers(x))
                if (!target && usable({y, x}, ec2)) target = Edge{y, x};
            if (target) break;
        }
        if (!target) throw Error("AutMismatch", "no safe edge next to a moved element");
        substitute(*target, rigid_simple(next++), false);
    }

    Certificate out = certify(cl, D, cert.Q);
    out.ji_top = cert.ji_top;
    out.cstar = cert.cstar;
    out.cstar_labels = cert.cstar_labels;
    out.thick = cert.thick;
    out.log = log;
    if (out.ji_top) check_cstar(out);
    auto G = automorphism_group(out.L);
    if (mode.M0) {
        if (!group_isomorphic(G, automorphism_group(*mode.M0))) throw Error("AutMismatch", "Aut(L) is not Aut(M0)");
    } else if (G.order != 1) {
        throw Error("AutMismatch", "L is not rigid");
    }
    out.log.push_back("|Aut(L)| = " + std::to_string(G.order));
    return out;
}

}  // namespace conlat
