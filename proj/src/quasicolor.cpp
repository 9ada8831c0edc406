#include "conlat/quasicolor.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace conlat {

std::string Color::str() const {
    if (tag == 0) return base;
    return base + "^(" + std::to_string(tag) + ")";
}

QuasiOrder::QuasiOrder(std::vector<Color> carrier) : carrier_(std::move(carrier)) {
    const int n = size();
    rel_.assign(n, Bits(n));
    for (int i = 0; i < n; ++i) rel_[i].set(i);
}

std::optional<int> QuasiOrder::find(const Color& c) const {
    for (int i = 0; i < size(); ++i)
        if (carrier_[i] == c) return i;
    return std::nullopt;
}

int QuasiOrder::index(const Color& c) const {
    auto i = find(c);
    if (!i) throw Error("ColorNotFound", c.str());
    return *i;
}

bool QuasiOrder::is_order() const {
    for (int a = 0; a < size(); ++a)
        for (int b = a + 1; b < size(); ++b)
            if (equiv(a, b)) return false;
    return true;
}

void QuasiOrder::close() {
    const int n = size();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (rel_[i][k]) rel_[i] |= rel_[k];
}

void QuasiOrder::add(int a, int b) {
    if (rel_[a][b]) return;
    rel_[a].set(b);
    close();
}

QuasiOrder preogen(std::vector<Color> carrier, const std::vector<std::pair<int, int>>& pairs) {
    QuasiOrder q(std::move(carrier));
    for (auto [a, b] : pairs) q.rel_[a].set(b);
    q.close();
    return q;
}

QuasiOrder dker(const Retraction& r) {
    std::vector<std::pair<int, int>> pairs;
    const int n = r.source.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (r.target.leq(r.map[a], r.map[b])) pairs.emplace_back(a, b);
    return preogen(r.source.carrier(), pairs);
}

ColoredLattice make_colored(FiniteLattice L, const std::vector<Color>& edge_color,
                            const std::vector<std::pair<Color, Color>>& order) {
    if (edge_color.size() != L.edges().size()) throw Error("PreconditionFailed", "one colour per edge expected");
    std::vector<Color> carrier = edge_color;
    std::sort(carrier.begin(), carrier.end());
    carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
    auto idx = [&](const Color& c) {
        auto it = std::lower_bound(carrier.begin(), carrier.end(), c);
        if (it == carrier.end() || *it != c) throw Error("PreconditionFailed", "colour " + c.str() + " colours no edge");
        return static_cast<int>(it - carrier.begin());
    };
    std::vector<int> cmap;
    cmap.reserve(edge_color.size());
    for (const auto& c : edge_color) cmap.push_back(idx(c));
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [a, b] : order) pairs.emplace_back(idx(a), idx(b));
    return {std::move(L), preogen(std::move(carrier), pairs), std::move(cmap)};
}

ColoringCheck is_quasi_coloring(const ColoredLattice& cl, const EdgeCongruences& ec) {
    ColoringCheck out;
    const auto& E = cl.lattice.edges();
    std::vector<bool> hit(cl.colors.size(), false);
    for (int c : cl.cmap) hit[c] = true;
    for (int c = 0; c < cl.colors.size(); ++c)
        if (!hit[c]) {
            out.ok = false;
            out.reason = "surjectivity: colour " + cl.colors.color(c).str() + " unused";
            return out;
        }
    // Scan representatives of each (colour, congruence) combination; the
    // first failing edge pair in index order is the witness.
    std::map<std::pair<int, int>, int> rep;
    for (int e = 0; e < static_cast<int>(E.size()); ++e) rep.emplace(std::make_pair(cl.cmap[e], ec.edge_class[e]), e);
    std::vector<int> reps;
    for (auto& kv : rep) reps.push_back(kv.second);
    std::sort(reps.begin(), reps.end());
    for (int p : reps)
        for (int q : reps) {
            bool colour_ge = cl.colors.leq(cl.cmap[q], cl.cmap[p]);
            bool con_ge = ec.contains(ec.edge_class[p], ec.edge_class[q]);
            if (colour_ge && !con_ge) {
                out.ok = false;
                out.reason = "C1";
            } else if (con_ge && !colour_ge) {
                out.ok = false;
                out.reason = "C2";
            }
            if (!out.ok) {
                out.p = E[p];
                out.q = E[q];
                return out;
            }
        }
    return out;
}

ColoringCheck is_quasi_coloring(const ColoredLattice& cl) {
    return is_quasi_coloring(cl, edge_congruences(cl.lattice));
}

namespace {

void validate_or_throw(const ColoredLattice& cl, const char* step) {
    auto chk = is_quasi_coloring(cl);
    if (!chk.ok)
        throw Error("InternalError", std::string(step) + " produced an invalid quasi-colouring (" + chk.reason + ")");
}

}  // namespace

ColoredLattice compose_coloring(const ColoredLattice& cl, const Retraction& delta, bool validate) {
    if (!(delta.source.carrier() == cl.colors.carrier()))
        throw Error("PreconditionFailed", "retraction source is not the colour set");
    auto k = dker(delta);
    const int n = cl.colors.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (k.leq(a, b) && !cl.colors.leq(a, b))
                throw Error("KernelTooBig", "dker contains " + cl.colors.color(a).str() + " <= " +
                                                cl.colors.color(b).str() + " which the colour order lacks");
            if (cl.colors.leq(a, b) && !k.leq(a, b))
                throw Error("NotHomomorphism", "the map does not preserve " + cl.colors.color(a).str() +
                                                   " <= " + cl.colors.color(b).str());
        }
    std::vector<bool> hit(delta.target.size(), false);
    for (int m : delta.map) hit[m] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
        throw Error("PreconditionFailed", "retraction is not surjective");
    ColoredLattice out{cl.lattice, delta.target, {}};
    out.cmap.reserve(cl.cmap.size());
    for (int c : cl.cmap) out.cmap.push_back(delta.map[c]);
    if (validate && out.lattice.size() < kDebugValidateBelow) validate_or_throw(out, "compose_coloring");
    return out;
}

GlueResult glue_colored(const ColoredLattice& cl1, const std::vector<Elem>& F1, const ColoredLattice& cl2,
                        const std::vector<Elem>& I2, bool validate) {
    const auto& L1 = cl1.lattice;
    const auto& L2 = cl2.lattice;
    Glued g = hall_dilworth_glue(L1, F1, L2, I2);

    std::vector<Color> carrier = cl1.colors.carrier();
    std::map<Color, int> at;
    for (int i = 0; i < static_cast<int>(carrier.size()); ++i) at.emplace(carrier[i], i);
    std::vector<int> from2c(cl2.colors.size());
    std::set<Color> shared;
    for (int i = 0; i < cl2.colors.size(); ++i) {
        const Color& c = cl2.colors.color(i);
        auto it = at.find(c);
        if (it == at.end()) {
            it = at.emplace(c, static_cast<int>(carrier.size())).first;
            carrier.push_back(c);
        } else {
            shared.insert(c);
        }
        from2c[i] = it->second;
    }

    std::vector<bool> in_overlap2(L2.size(), false);
    for (Elem y : I2) in_overlap2[y] = true;
    std::vector<Elem> to1(L2.size(), -1);
    for (size_t i = 0; i < I2.size(); ++i) to1[I2[i]] = F1[i];

    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < cl1.colors.size(); ++a)
        for (int b = 0; b < cl1.colors.size(); ++b)
            if (cl1.colors.leq(a, b)) pairs.emplace_back(a, b);
    for (int a = 0; a < cl2.colors.size(); ++a)
        for (int b = 0; b < cl2.colors.size(); ++b)
            if (cl2.colors.leq(a, b)) pairs.emplace_back(from2c[a], from2c[b]);

    std::set<Color> witnessed;
    for (auto e : L2.edges()) {
        if (!in_overlap2[e.lo] || !in_overlap2[e.hi]) continue;
        int c1 = cl1.cmap[L1.edge_index(to1[e.lo], to1[e.hi])];
        int c2 = from2c[cl2.cmap[L2.edge_index(e.lo, e.hi)]];
        pairs.emplace_back(c1, c2);
        pairs.emplace_back(c2, c1);
        if (c1 == c2) witnessed.insert(carrier[c1]);
    }
    for (const auto& c : shared)
        if (!witnessed.count(c))
            throw Error("SharedColorUnwitnessed", "colour " + c.str() + " occurs on both sides but on no overlap edge coloured alike");

    GlueResult out;
    out.from1 = g.from1;
    out.from2 = g.from2;
    const auto& L = g.lattice;
    out.colored.cmap.assign(L.edges().size(), -1);
    for (auto e : L1.edges())
        out.colored.cmap[L.edge_index(g.from1[e.lo], g.from1[e.hi])] = cl1.cmap[L1.edge_index(e.lo, e.hi)];
    for (auto e : L2.edges()) {
        if (in_overlap2[e.lo] && in_overlap2[e.hi]) continue;
        out.colored.cmap[L.edge_index(g.from2[e.lo], g.from2[e.hi])] = from2c[cl2.cmap[L2.edge_index(e.lo, e.hi)]];
    }
    if (std::find(out.colored.cmap.begin(), out.colored.cmap.end(), -1) != out.colored.cmap.end())
        throw Error("InternalError", "glued lattice has an edge from neither side");
    out.colored.lattice = std::move(g.lattice);
    out.colored.colors = preogen(std::move(carrier), pairs);
    if (validate && out.colored.lattice.size() < kDebugValidateBelow) validate_or_throw(out.colored, "glue_colored");
    return out;
}

std::vector<Elem> colors_as_elements(const QuasiOrder& colors, const FiniteLattice& D) {
    std::vector<Elem> out;
    for (const auto& c : colors.carrier()) {
        if (c.tag != 0) throw Error("PreconditionFailed", "colour " + c.str() + " is an alter ego");
        out.push_back(D.index(c.base));
    }
    return out;
}

MuResult mu_isomorphism(const ColoredLattice& cl, const FiniteLattice& D, const std::vector<Elem>& color_elem) {
    if (!cl.colors.is_order()) throw Error("NotAnOrder", "colour quasiorder is not antisymmetric");
    MuResult r;
    r.ec = edge_congruences(cl.lattice);
    const int k = r.ec.size();
    r.mu.assign(k, -1);
    const auto& E = cl.lattice.edges();
    for (int e = 0; e < static_cast<int>(E.size()); ++e) {
        Elem d = color_elem[cl.cmap[e]];
        Elem& m = r.mu[r.ec.edge_class[e]];
        if (m >= 0 && m != d) throw Error("NotIso", "two edges with one congruence carry different colours");
        m = d;
    }
    auto J = join_irreducibles(D);
    std::vector<Elem> sorted_mu = r.mu;
    std::sort(sorted_mu.begin(), sorted_mu.end());
    if (std::adjacent_find(sorted_mu.begin(), sorted_mu.end()) != sorted_mu.end() || sorted_mu != J)
        throw Error("NotIso", "mu is not a bijection onto J(D)");
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (r.ec.contains(i, j) != D.leq(r.mu[j], r.mu[i])) throw Error("NotIso", "mu is not an order isomorphism");
    r.con = congruence_lattice(cl.lattice);
    r.phi.assign(r.con.dict.size(), D.bottom());
    std::vector<bool> hit(D.size(), false);
    for (size_t c = 0; c < r.con.dict.size(); ++c) {
        const auto& th = r.con.dict[c];
        for (int j = 0; j < k; ++j)
            if (th.same(r.ec.generator[j].lo, r.ec.generator[j].hi)) r.phi[c] = D.join(r.phi[c], r.mu[j]);
        if (hit[r.phi[c]]) throw Error("NotIso", "phi is not injective");
        hit[r.phi[c]] = true;
    }
    if (static_cast<int>(r.con.dict.size()) != D.size()) throw Error("NotIso", "phi is not surjective");
    for (size_t a = 0; a < r.con.dict.size(); ++a)
        for (size_t b = 0; b < r.con.dict.size(); ++b)
            if (r.con.dict[a].refines(r.con.dict[b]) != D.leq(r.phi[a], r.phi[b]))
                throw Error("NotIso", "phi is not an order isomorphism");
    return r;
}

std::vector<Elem> produced_elements(const ColoredLattice& cl, const FiniteLattice& D,
                                    const std::vector<Elem>& color_elem) {
    const auto& L = cl.lattice;
    const int n = L.size();
    const auto& topo = L.linear_order();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[topo[i]] = i;
    std::vector<bool> seen(D.size(), false);
    seen[D.bottom()] = true;
    std::vector<Elem> val(n);
    for (int a = 0; a < n; ++a) {
        val[a] = D.bottom();
        for (int i = pos[a] + 1; i < n; ++i) {
            Elem b = topo[i];
            if (!L.leq(a, b)) continue;
            for (Elem c : L.lower_covers(b)) {
                if (!L.leq(a, c)) continue;
                val[b] = D.join(val[c], color_elem[cl.cmap[L.edge_index(c, b)]]);
                break;
            }
            seen[val[b]] = true;
        }
    }
    std::vector<Elem> out;
    for (int d = 0; d < D.size(); ++d)
        if (seen[d]) out.push_back(d);
    return out;
}

ColoredLattice natural_coloring(const FiniteLattice& L) {
    auto ec = edge_congruences(L);
    std::vector<Color> carrier;
    for (int i = 0; i < ec.size(); ++i) carrier.push_back({"j" + std::to_string(i), 0});
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < ec.size(); ++i)
        for (int j = 0; j < ec.size(); ++j)
            if (ec.contains(i, j)) pairs.emplace_back(j, i);
    return ColoredLattice{L, preogen(std::move(carrier), pairs), ec.edge_class};
}

}  // namespace conlat
