#include "conlat/gadgets.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "conlat/group.hpp"
#include "conlat/small.hpp"

namespace conlat {

std::vector<Edge> Gadget::all(const std::string& role) const {
    std::vector<Edge> out;
    for (const auto& [r, e] : designated)
        if (r == role) out.push_back(e);
    return out;
}

Edge Gadget::one(const std::string& role) const {
    for (const auto& [r, e] : designated)
        if (r == role) return e;
    throw Error("InternalError", "gadget has no " + role + " edge");
}

bool is_simple(const FiniteLattice& L) {
    if (L.size() < 2) return false;
    for (auto e : L.edges())
        if (!principal_congruence(L, e).is_full()) return false;
    return true;
}

namespace {

void check_or_throw(const ColoredLattice& cl, const char* what) {
    if (cl.lattice.size() >= kDebugValidateBelow) return;
    auto chk = is_quasi_coloring(cl);
    if (!chk.ok) throw Error("VerificationFailed", std::string(what) + " fails " + chk.reason);
}

Edge map_edge(const std::vector<Elem>& m, Edge e) { return {m[e.lo], m[e.hi]}; }

}  // namespace

// Frozen: the first hit of tools/search_gadgets (also in data/k_gadget.json).
FiniteLattice k_lattice() {
    return from_cover({"0", "a", "b", "c", "d", "1"},
                      {{"0", "a"}, {"0", "b"}, {"a", "c"}, {"a", "d"}, {"c", "1"}, {"d", "1"}, {"b", "1"}});
}

Gadget gadget_K(const Color& alpha, const Color& beta, const std::optional<FiniteLattice>& M) {
    auto K = k_lattice();
    Elem o = K.index("0"), a = K.index("a"), b = K.index("b"), c = K.index("c"), t = K.index("1");
    std::vector<Color> ec;
    for (auto e : K.edges()) {
        bool is_beta = (e.lo == o && e.hi == a) || (e.lo == b && e.hi == t);
        ec.push_back(is_beta ? beta : alpha);
    }
    Gadget g{make_colored(K, ec, {{alpha, beta}}), {}};
    g.designated = {{"thick", {a, c}}, {"alpha-edge", {o, b}}, {"beta-edge", {b, t}}};
    if (M) {
        if (M->size() < 2 || !is_simple(*M)) throw Error("MNotSimple", "substituted lattice must be simple");
        g.colored = replace_prime_interval(g.colored, {a, c}, *M);
    }
    check_or_throw(g.colored, "K gadget");
    auto con = congruence_lattice(g.colored.lattice);
    if (con.lattice.size() != 3 || !con.lattice.is_chain()) throw Error("VerificationFailed", "K gadget Con is not a 3-chain");
    return g;
}

Gadget snake(const std::vector<Color>& xs) {
    if (xs.empty()) throw Error("NotAChain", "snake needs at least one colour");
    if (xs.size() == 1) {
        Gadget g{make_colored(chain(2), {xs[0]}), {}};
        g.designated = {{"bottom", {0, 1}}, {"top", {0, 1}}};
        return g;
    }
    Gadget cur = gadget_K(xs[0], xs[1]);
    Edge top = cur.one("beta-edge");
    Edge bottom = cur.one("alpha-edge");
    for (size_t i = 2; i < xs.size(); ++i) {
        Gadget k = gadget_K(xs[i - 1], xs[i]);
        Edge kb = k.one("alpha-edge");
        auto gl = glue_colored(cur.colored, {top.lo, top.hi}, k.colored, {kb.lo, kb.hi});
        Gadget next{std::move(gl.colored), {}};
        for (auto& [r, e] : cur.designated)
            if (r == "thick") next.designated.push_back({r, map_edge(gl.from1, e)});
        for (auto& [r, e] : k.designated)
            if (r == "thick") next.designated.push_back({r, map_edge(gl.from2, e)});
        bottom = map_edge(gl.from1, bottom);
        top = map_edge(gl.from2, k.one("beta-edge"));
        cur = std::move(next);
    }
    std::erase_if(cur.designated, [](const auto& d) { return d.first != "thick"; });
    cur.designated.push_back({"bottom", bottom});
    cur.designated.push_back({"top", top});
    check_or_throw(cur.colored, "snake");
    return cur;
}

Gadget snake(const QuasiOrder& colors) {
    std::vector<int> idx(colors.size());
    for (int i = 0; i < colors.size(); ++i) idx[i] = i;
    if (!colors.is_order()) throw Error("NotAChain", "colours are not an order");
    for (int i = 0; i < colors.size(); ++i)
        for (int j = 0; j < colors.size(); ++j)
            if (!colors.leq(i, j) && !colors.leq(j, i)) throw Error("NotAChain", "colours are not a chain");
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return a != b && colors.leq(a, b); });
    std::vector<Color> xs;
    for (int i : idx) xs.push_back(colors.color(i));
    return snake(xs);
}

Branch branch_from_chain(const LabeledChain& lc) {
    const auto& D = lc.target;
    std::map<Elem, int> seen;
    std::vector<Color> ec;
    std::map<Color, Elem> back;
    for (Elem x : lc.labels) {
        Color c{D.name(x), -(++seen[x])};
        ec.push_back(c);
        back[c] = x;
    }
    Branch b{{make_colored(chain(lc.length() + 1), ec), {}}, {}};
    for (const auto& c : b.gadget.colored.colors.carrier()) b.origin.push_back(back.at(c));
    b.gadget.designated = {{"bottom", {0, 1}}, {"top", {lc.length() - 1, lc.length()}}};
    return b;
}

Gadget s_k_gadget(const std::vector<Color>& p, const std::optional<Color>& e, const std::optional<Color>& f,
                  const Color& q, const std::vector<Color>& a) {
    std::vector<Color> handles;
    if (e) handles.push_back(*e);
    if (f) handles.push_back(*f);
    const size_t squares = handles.size();
    handles.insert(handles.end(), a.begin(), a.end());
    if (p.size() != handles.size() + 1) throw Error("PreconditionFailed", "need one more p colour than handles");
    std::vector<Color> spine{p[0]};
    for (size_t i = 0; i < handles.size(); ++i) {
        spine.push_back(handles[i]);
        spine.push_back(p[i + 1]);
    }
    const int N = static_cast<int>(spine.size());  // spine edges
    std::vector<std::string> names;
    for (int j = 0; j <= N; ++j) names.push_back("s" + std::to_string(j));
    for (int j = 0; j <= N; ++j) names.push_back("t" + std::to_string(j));
    auto s = [](int j) { return j; };
    auto t = [N](int j) { return N + 1 + j; };
    std::vector<std::pair<Elem, Elem>> rel;
    std::vector<std::tuple<Elem, Elem, Color>> colored;  // collected edge colours
    std::vector<std::pair<int, Elem>> thick_at;           // level, c element
    for (int j = 0; j <= N; ++j) {
        rel.emplace_back(s(j), t(j));
        colored.emplace_back(s(j), t(j), q);
    }
    for (int j = 0; j < N; ++j) {
        rel.emplace_back(s(j), s(j + 1));
        colored.emplace_back(s(j), s(j + 1), spine[j]);
        // Levels 1 and 3 carry e and f when present.
        bool square = squares >= 1 && (j == 1 || (squares == 2 && j == 3));
        if (!square) {
            rel.emplace_back(t(j), t(j + 1));
            colored.emplace_back(t(j), t(j + 1), spine[j]);
            continue;
        }
        Elem c = static_cast<Elem>(names.size());
        names.push_back("c" + std::to_string(j));
        Elem d = static_cast<Elem>(names.size());
        names.push_back("d" + std::to_string(j));
        for (Elem m : {c, d}) {
            rel.emplace_back(t(j), m);
            rel.emplace_back(m, t(j + 1));
            colored.emplace_back(t(j), m, spine[j]);
            colored.emplace_back(m, t(j + 1), spine[j]);
        }
        thick_at.emplace_back(j, c);
    }
    auto L = build_lattice(names, rel);
    std::vector<Color> ec(L.edges().size());
    for (auto& [lo, hi, c] : colored) ec[L.edge_index(lo, hi)] = c;
    std::vector<std::pair<Color, Color>> order;
    for (size_t i = 0; i < squares; ++i) order.emplace_back(handles[i], q);
    Gadget g{make_colored(L, ec, order), {}};
    for (int j = 0; j < N; ++j) g.designated.push_back({"spine", {s(j), s(j + 1)}});
    for (auto [j, c] : thick_at) g.designated.push_back({"thick", {t(j), c}});
    check_or_throw(g.colored, "S_k gadget");
    return g;
}

std::vector<Elem> spine_elements(const Gadget& sk) {
    auto sp = sk.all("spine");
    std::vector<Elem> out{sp.front().lo};
    for (auto e : sp) out.push_back(e.hi);
    return out;
}

Gadget covering_square(const Color& c1, const Color& c2) {
    auto B = boolean_square();
    Elem o = B.index("0"), a = B.index("a"), b = B.index("b"), t = B.index("1");
    std::vector<Color> ec;
    for (auto e : B.edges()) ec.push_back((e.lo == o && e.hi == a) || (e.lo == b && e.hi == t) ? c1 : c2);
    Gadget g{make_colored(B, ec), {}};
    g.designated = {{"c1", {o, a}}, {"c1", {b, t}}, {"c2", {o, b}}, {"c2", {a, t}}};
    return g;
}

namespace {

constexpr int kFamilyCap = 32;

// Cheap isomorphism invariant: sorted (height, up-degree, down-degree).
std::vector<std::tuple<int, size_t, size_t>> shape(const FiniteLattice& L) {
    std::vector<std::tuple<int, size_t, size_t>> v;
    for (Elem x = 0; x < L.size(); ++x) v.emplace_back(L.height(x), L.upper_covers(x).size(), L.lower_covers(x).size());
    std::sort(v.begin(), v.end());
    return v;
}

std::mutex family_mutex;
std::vector<FiniteLattice> family_members;
int family_next_size = 7;  // nothing rigid and simple exists below 7 elements besides C2

// Grows the family one lattice size at a time until it has more than n
// members (or the cap is reached).
std::vector<FiniteLattice> family(int n) {
    std::lock_guard lock(family_mutex);
    auto& fam = family_members;
    while (static_cast<int>(fam.size()) <= n && static_cast<int>(fam.size()) < kFamilyCap && family_next_size <= 10) {
        for_each_small_lattice(family_next_size, [&](const FiniteLattice& L) {
            if (!is_simple(L) || !is_rigid(L)) return true;
            auto sh = shape(L);
            for (const auto& f : fam)
                if (f.size() == L.size() && shape(f) == sh && isomorphic(f, L)) return true;
            fam.push_back(L);
            return static_cast<int>(fam.size()) < kFamilyCap;
        });
        ++family_next_size;
    }
    return fam;
}

}  // namespace

int rigid_simple_family_size() { return static_cast<int>(family(kFamilyCap).size()); }

FiniteLattice rigid_simple(int n) {
    const auto fam = family(n);
    if (n < 0 || n >= static_cast<int>(fam.size()))
        throw Error("ExhaustedFamily", "rigid simple family has " + std::to_string(fam.size()) + " members");
    const auto& M = fam[n];
    if (!is_simple(M) || !is_rigid(M)) throw Error("VerificationFailed", "family member is not rigid and simple");
    return M;
}

bool substitution_safe(const FiniteLattice& L, const EdgeCongruences& ec, Edge p) {
    int cp = ec.edge_class[L.edge_index(p.lo, p.hi)];
    for (Elem a : L.upper_covers(p.lo))
        if (a != p.hi && !ec.contains(ec.edge_class[L.edge_index(p.lo, a)], cp)) return false;
    for (Elem b : L.lower_covers(p.hi))
        if (b != p.lo && !ec.contains(ec.edge_class[L.edge_index(b, p.hi)], cp)) return false;
    return true;
}

ColoredLattice replace_prime_interval(const ColoredLattice& cl, Edge p, const FiniteLattice& M) {
    if (M.size() < 2 || !is_simple(M)) throw Error("MNotSimple", "substituted lattice must be simple");
    const auto& L = cl.lattice;
    if (!L.covers(p.lo, p.hi)) throw Error("NotAnInterval", "not a prime interval");
    if (M.size() == 2) return cl;
    if (!substitution_safe(L, edge_congruences(L), p))
        throw Error("UnsafeInterval", "[" + L.name(p.lo) + "," + L.name(p.hi) + "] meets a cover with a smaller congruence");
    auto names = L.names();
    std::vector<Elem> at(M.size());
    at[M.bottom()] = p.lo;
    at[M.top()] = p.hi;
    for (Elem m = 0; m < M.size(); ++m) {
        if (m == M.bottom() || m == M.top()) continue;
        std::string nm = L.name(p.lo) + "~" + L.name(p.hi) + ":" + M.name(m);
        while (L.find(nm)) nm += "'";
        at[m] = static_cast<Elem>(names.size());
        names.push_back(nm);
    }
    std::vector<std::pair<Elem, Elem>> rel;
    for (auto e : L.edges())
        if (e != p) rel.emplace_back(e.lo, e.hi);
    for (auto e : M.edges()) rel.emplace_back(at[e.lo], at[e.hi]);
    ColoredLattice out;
    out.lattice = build_lattice(std::move(names), rel);
    out.colors = cl.colors;
    const int pc = cl.cmap[L.edge_index(p.lo, p.hi)];
    out.cmap.assign(out.lattice.edges().size(), pc);
    for (auto e : L.edges())
        if (e != p) out.cmap[out.lattice.edge_index(e.lo, e.hi)] = cl.cmap[L.edge_index(e.lo, e.hi)];
    check_or_throw(out, "substitution");
    return out;
}

}  // namespace conlat
