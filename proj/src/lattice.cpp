#include "conlat/lattice.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace conlat {

std::optional<Elem> FiniteLattice::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

Elem FiniteLattice::index(std::string_view name) const {
    auto x = find(name);
    if (!x) throw Error("UnknownElement", std::string(name));
    return *x;
}

int FiniteLattice::edge_index(Elem lo, Elem hi) const {
    for (auto [h, id] : up_edge_[lo])
        if (h == hi) return id;
    return -1;
}

bool FiniteLattice::is_chain() const {
    for (int x = 0; x < n_; ++x)
        if (upc_[x].size() > 1) return false;
    return true;
}

FiniteLattice build_lattice(std::vector<std::string> names,
                            const std::vector<std::pair<Elem, Elem>>& rel) {
    FiniteLattice L;
    const int n = static_cast<int>(names.size());
    if (n == 0) throw Error("NotALattice", "empty element set");
    L.n_ = n;
    for (int i = 0; i < n; ++i)
        if (!L.by_name_.emplace(names[i], i).second) throw Error("DuplicateName", names[i]);
    L.names_ = std::move(names);

    std::vector<std::vector<Elem>> succ(n);
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : rel) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw Error("NotALattice", "relation index out of range");
        if (a == b) continue;
        succ[a].push_back(b);
    }
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (Elem b : s) ++indeg[b];
    }
    std::vector<Elem> topo;
    topo.reserve(n);
    std::vector<Elem> ready;
    for (int i = n - 1; i >= 0; --i)
        if (indeg[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        Elem x = ready.back();
        ready.pop_back();
        topo.push_back(x);
        for (Elem y : succ[x])
            if (--indeg[y] == 0) ready.push_back(y);
    }
    if (static_cast<int>(topo.size()) != n) throw Error("CycleError", "cover relation has a cycle");

    L.up_.assign(n, Bits(n));
    L.down_.assign(n, Bits(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        Elem x = *it;
        L.up_[x].set(x);
        for (Elem y : succ[x]) L.up_[x] |= L.up_[y];
    }
    for (int x = 0; x < n; ++x)
        for (auto y = L.up_[x].find_first(); y != Bits::npos; y = L.up_[x].find_next(y))
            L.down_[y].set(x);

    L.upc_.assign(n, {});
    L.lowc_.assign(n, {});
    for (int x = 0; x < n; ++x) {
        Bits strict = L.up_[x];
        strict.reset(x);
        Bits covered(n);
        for (auto z = strict.find_first(); z != Bits::npos; z = strict.find_next(z)) {
            Bits above = L.up_[z];
            above.reset(z);
            covered |= above;
        }
        Bits cov = strict - covered;
        for (auto y = cov.find_first(); y != Bits::npos; y = cov.find_next(y)) {
            L.upc_[x].push_back(static_cast<Elem>(y));
            L.lowc_[y].push_back(x);
        }
    }
    for (int x = 0; x < n; ++x)
        for (Elem y : L.upc_[x]) L.edges_.push_back({x, y});
    std::sort(L.edges_.begin(), L.edges_.end());
    L.up_edge_.assign(n, {});
    for (int i = 0; i < static_cast<int>(L.edges_.size()); ++i)
        L.up_edge_[L.edges_[i].lo].push_back({L.edges_[i].hi, i});

    L.topo_ = topo;
    L.height_.assign(n, 0);
    for (Elem x : topo)
        for (Elem y : L.upc_[x]) L.height_[y] = std::max(L.height_[y], L.height_[x] + 1);

    // Joins top-down: for x ≰ y, x∨y is the least of {c∨y : c ≻ x}.
    L.join_.assign(static_cast<size_t>(n) * n, -1);
    L.meet_.assign(static_cast<size_t>(n) * n, -1);
    auto fail = [&](Elem a, Elem b, const char* what) {
        throw Error("NotALattice", "no unique " + std::string(what) + " for (" + L.names_[a] + ", " +
                                       L.names_[b] + ")");
    };
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        Elem x = *it;
        for (int y = 0; y < n; ++y) {
            Elem& j = L.join_[x * n + y];
            if (L.up_[x][y]) { j = y; continue; }
            if (L.up_[y][x]) { j = x; continue; }
            if (L.upc_[x].empty()) fail(x, y, "join");
            Elem best = -1;
            for (Elem c : L.upc_[x]) {
                Elem cand = L.join_[c * n + y];
                if (best < 0 || L.up_[cand][best]) best = cand;
            }
            Bits common = L.up_[x] & L.up_[y];
            if (!common.is_subset_of(L.up_[best])) fail(x, y, "join");
            j = best;
        }
    }
    for (Elem x : topo) {
        for (int y = 0; y < n; ++y) {
            Elem& m = L.meet_[x * n + y];
            if (L.up_[x][y]) { m = x; continue; }
            if (L.up_[y][x]) { m = y; continue; }
            if (L.lowc_[x].empty()) fail(x, y, "meet");
            Elem best = -1;
            for (Elem c : L.lowc_[x]) {
                Elem cand = L.meet_[c * n + y];
                if (best < 0 || L.up_[best][cand]) best = cand;
            }
            Bits common = L.down_[x] & L.down_[y];
            if (!common.is_subset_of(L.down_[best])) fail(x, y, "meet");
            m = best;
        }
    }
    std::vector<Elem> mins, maxs;
    for (int x = 0; x < n; ++x) {
        if (L.lowc_[x].empty()) mins.push_back(x);
        if (L.upc_[x].empty()) maxs.push_back(x);
    }
    if (mins.size() != 1) fail(mins[0], mins[1], "meet");
    if (maxs.size() != 1) fail(maxs[0], maxs[1], "join");
    L.bottom_ = mins[0];
    L.top_ = maxs[0];
    return L;
}

FiniteLattice from_cover(const std::vector<std::string>& names,
                         const std::vector<std::pair<std::string, std::string>>& covers) {
    std::unordered_map<std::string, Elem> idx;
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
        if (!idx.emplace(names[i], i).second) throw Error("DuplicateName", names[i]);
    std::vector<std::pair<Elem, Elem>> rel;
    for (const auto& [a, b] : covers) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end() || ib == idx.end())
            throw Error("UnknownElement", "cover (" + a + ", " + b + ") references an undeclared name");
        if (ia->second == ib->second) throw Error("CycleError", "self cover on " + a);
        rel.emplace_back(ia->second, ib->second);
    }
    return build_lattice(names, rel);
}

FiniteLattice chain(int n) {
    std::vector<std::string> names;
    std::vector<std::pair<Elem, Elem>> rel;
    for (int i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        if (i) rel.emplace_back(i - 1, i);
    }
    return build_lattice(names, rel);
}

FiniteLattice boolean_square() {
    return from_cover({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

FiniteLattice m3() {
    return from_cover({"0", "a", "b", "c", "1"},
                      {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
}

FiniteLattice n5() {
    return from_cover({"0", "a", "b", "c", "1"},
                      {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
}

FiniteLattice restrict(const FiniteLattice& L, const std::vector<Elem>& keep) {
    std::vector<Elem> ks = keep;
    std::sort(ks.begin(), ks.end());
    std::vector<int> pos(L.size(), -1);
    std::vector<std::string> names;
    for (int i = 0; i < static_cast<int>(ks.size()); ++i) {
        pos[ks[i]] = i;
        names.push_back(L.name(ks[i]));
    }
    std::vector<std::pair<Elem, Elem>> rel;
    for (Elem a : ks)
        for (Elem b : ks)
            if (a != b && L.leq(a, b)) rel.emplace_back(pos[a], pos[b]);
    return build_lattice(names, rel);
}

std::vector<Elem> interval_elems(const FiniteLattice& L, Elem a, Elem b) {
    std::vector<Elem> out;
    Bits s = L.up(a) & L.down(b);
    for (auto x = s.find_first(); x != Bits::npos; x = s.find_next(x)) out.push_back(static_cast<Elem>(x));
    return out;
}

FiniteLattice interval(const FiniteLattice& L, Elem a, Elem b) {
    if (!L.leq(a, b)) throw Error("NotAnInterval", L.name(a) + " is not below " + L.name(b));
    return restrict(L, interval_elems(L, a, b));
}

FiniteLattice ideal(const FiniteLattice& L, Elem a) { return interval(L, L.bottom(), a); }
FiniteLattice filter(const FiniteLattice& L, Elem a) { return interval(L, a, L.top()); }

FiniteLattice direct_product(const FiniteLattice& A, const FiniteLattice& B) {
    const int na = A.size(), nb = B.size();
    std::vector<std::string> names;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) names.push_back("(" + A.name(a) + "," + B.name(b) + ")");
    std::vector<std::pair<Elem, Elem>> rel;
    for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b) {
            for (Elem c : A.upper_covers(a)) rel.emplace_back(a * nb + b, c * nb + b);
            for (Elem c : B.upper_covers(b)) rel.emplace_back(a * nb + b, a * nb + c);
        }
    return build_lattice(names, rel);
}

FiniteLattice glued_sum(const FiniteLattice& C0, const FiniteLattice& C1) {
    if (!C0.is_chain() || !C1.is_chain()) throw Error("NotAChain", "glued_sum operands must be chains");
    std::vector<Elem> f1{C0.top()}, i2{C1.bottom()};
    return hall_dilworth_glue(C0, f1, C1, i2).lattice;
}

FiniteLattice dual(const FiniteLattice& L) {
    std::vector<std::pair<Elem, Elem>> rel;
    for (auto e : L.edges()) rel.emplace_back(e.hi, e.lo);
    return build_lattice(L.names(), rel);
}

namespace {

bool is_filter(const FiniteLattice& L, const std::vector<Elem>& s) {
    Bits in(L.size());
    for (Elem x : s) in.set(x);
    for (Elem x : s) {
        if (!L.up(x).is_subset_of(in)) return false;
        for (Elem y : s)
            if (!in[L.meet(x, y)]) return false;
    }
    return true;
}

bool is_ideal(const FiniteLattice& L, const std::vector<Elem>& s) {
    Bits in(L.size());
    for (Elem x : s) in.set(x);
    for (Elem x : s) {
        if (!L.down(x).is_subset_of(in)) return false;
        for (Elem y : s)
            if (!in[L.join(x, y)]) return false;
    }
    return true;
}

std::string fresh_name(const std::string& base, const std::unordered_map<std::string, int>& used) {
    std::string s = base;
    while (used.count(s)) s += "'";
    return s;
}

}  // namespace

Glued hall_dilworth_glue(const FiniteLattice& L1, const std::vector<Elem>& F1, const FiniteLattice& L2,
                         const std::vector<Elem>& I2) {
    if (F1.empty() || F1.size() != I2.size()) throw Error("NotIso", "overlap sizes differ or are empty");
    if (!is_filter(L1, F1)) throw Error("NotAFilter", "overlap is not a filter of the lower lattice");
    if (!is_ideal(L2, I2)) throw Error("NotAnIdeal", "overlap is not an ideal of the upper lattice");
    std::vector<int> m2(L2.size(), -1);
    for (size_t i = 0; i < I2.size(); ++i) m2[I2[i]] = F1[i];
    for (size_t i = 0; i < F1.size(); ++i)
        for (size_t j = 0; j < F1.size(); ++j)
            if (L1.leq(F1[i], F1[j]) != L2.leq(I2[i], I2[j]))
                throw Error("NotIso", "overlap match does not preserve the order");

    Glued g;
    std::vector<std::string> names = L1.names();
    std::unordered_map<std::string, int> used;
    for (int i = 0; i < L1.size(); ++i) used.emplace(names[i], i);
    g.from1.resize(L1.size());
    std::iota(g.from1.begin(), g.from1.end(), 0);
    g.from2.assign(L2.size(), -1);
    for (int y = 0; y < L2.size(); ++y) {
        if (m2[y] >= 0) {
            g.from2[y] = m2[y];
            continue;
        }
        std::string nm = fresh_name(L2.name(y), used);
        used.emplace(nm, static_cast<int>(names.size()));
        g.from2[y] = static_cast<Elem>(names.size());
        names.push_back(nm);
    }
    std::vector<std::pair<Elem, Elem>> rel;
    for (auto e : L1.edges()) rel.emplace_back(e.lo, e.hi);
    for (auto e : L2.edges()) rel.emplace_back(g.from2[e.lo], g.from2[e.hi]);
    g.lattice = build_lattice(names, rel);
    return g;
}

std::vector<Elem> join_irreducibles(const FiniteLattice& L) {
    std::vector<Elem> out;
    for (int x = 0; x < L.size(); ++x)
        if (L.lower_covers(x).size() == 1) out.push_back(x);
    return out;
}

std::vector<Elem> meet_irreducibles(const FiniteLattice& L) {
    std::vector<Elem> out;
    for (int x = 0; x < L.size(); ++x)
        if (L.upper_covers(x).size() == 1) out.push_back(x);
    return out;
}

std::vector<Elem> j_zero(const FiniteLattice& L) {
    auto j = join_irreducibles(L);
    j.push_back(L.bottom());
    std::sort(j.begin(), j.end());
    return j;
}

std::vector<Elem> j_plus(const FiniteLattice& L) {
    auto j = j_zero(L);
    if (!std::binary_search(j.begin(), j.end(), L.top())) j.push_back(L.top());
    std::sort(j.begin(), j.end());
    return j;
}

std::vector<Elem> coatoms(const FiniteLattice& L) { return L.lower_covers(L.top()); }
std::vector<Elem> atoms(const FiniteLattice& L) { return L.upper_covers(L.bottom()); }

bool is_distributive_triple(const FiniteLattice& L) {
    const int n = L.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) return false;
    return true;
}

bool is_distributive_birkhoff(const FiniteLattice& L) {
    auto J = join_irreducibles(L);
    const int n = L.size();
    // x -> J ∩ ↓x must be injective, and J must have exactly n downsets.
    std::set<std::vector<bool>> images;
    for (int x = 0; x < n; ++x) {
        std::vector<bool> img;
        for (Elem j : J) img.push_back(L.leq(j, x));
        images.insert(img);
    }
    if (static_cast<int>(images.size()) != n) return false;
    long count = 0;
    std::vector<bool> in(J.size(), false);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (count > n) return;
        if (i == J.size()) {
            ++count;
            return;
        }
        rec(i + 1);
        for (size_t k = 0; k < i; ++k)
            if (L.lt(J[k], J[i]) && !in[k]) return;
        in[i] = true;
        rec(i + 1);
        in[i] = false;
    };
    // J is listed by index, which need not be a linear extension; sort by height first.
    std::stable_sort(J.begin(), J.end(), [&](Elem a, Elem b) { return L.height(a) < L.height(b); });
    rec(0);
    return count == n;
}

bool is_distributive(const FiniteLattice& L) {
    bool a = is_distributive_triple(L);
    bool b = is_distributive_birkhoff(L);
    if (a != b) throw Error("InternalError", "distributivity checks disagree");
    return a;
}

ConditionReport condition_iii(const FiniteLattice& D) {
    if (!is_distributive(D)) throw Error("NotDistributive", "the condition needs a distributive lattice");
    ConditionReport r;
    auto J = join_irreducibles(D);
    r.planar = true;
    for (size_t a = 0; a < J.size() && r.planar; ++a)
        for (size_t b = a + 1; b < J.size() && r.planar; ++b) {
            if (D.comparable(J[a], J[b])) continue;
            for (size_t c = b + 1; c < J.size(); ++c)
                if (!D.comparable(J[a], J[c]) && !D.comparable(J[b], J[c])) {
                    r.planar = false;
                    break;
                }
        }
    if (D.size() > 1)
        for (Elem c : coatoms(D))
            if (D.lower_covers(c).size() >= 2) r.join_reducible_coatoms.push_back(c);
    r.holds = r.planar && r.join_reducible_coatoms.size() <= 1;
    return r;
}

TopDecomposition decompose_top(const FiniteLattice& D) {
    if (D.size() > 1 && D.lower_covers(D.top()).size() == 1)
        throw Error("TopIrreducible", "top is join-irreducible");
    if (D.size() == 1) throw Error("TopIrreducible", "singleton lattice");
    if (!condition_iii(D).holds) throw Error("NoDecomposition", "D is not planar or has two join-reducible coatoms");
    auto J = join_irreducibles(D);
    for (Elem p : J) {
        if (!D.covers(p, D.top())) continue;
        for (Elem q : J) {
            if (q == p || D.join(p, q) != D.top()) continue;
            TopDecomposition t;
            t.p = p;
            t.q = q;
            t.d_prime_map = interval_elems(D, D.bottom(), p);
            t.d_prime = restrict(D, t.d_prime_map);
            t.q_filter = interval_elems(D, q, D.top());
            std::sort(t.q_filter.begin(), t.q_filter.end(),
                      [&](Elem a, Elem b) { return D.height(a) < D.height(b); });
            bool ok = true;
            for (size_t i = 1; i < t.q_filter.size(); ++i)
                ok = ok && D.lt(t.q_filter[i - 1], t.q_filter[i]);
            for (Elem x : t.q_filter) ok = ok && !D.leq(x, p);
            ok = ok && static_cast<int>(t.q_filter.size() + t.d_prime_map.size()) == D.size();
            for (Elem j : J) ok = ok && !D.lt(q, j);
            if (ok) return t;
        }
    }
    throw Error("NoDecomposition", "no coatom p and q with p∨q = 1 split the lattice");
}

FiniteLattice downset_lattice(int n, const std::vector<std::pair<int, int>>& lt) {
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (auto [a, b] : lt) less[a][b] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (less[i][k] && less[k][j]) less[i][j] = true;
    std::vector<unsigned> downs;
    for (unsigned s = 0; s < (1u << n); ++s) {
        bool ok = true;
        for (int b = 0; b < n && ok; ++b)
            if (s >> b & 1)
                for (int a = 0; a < n; ++a)
                    if (less[a][b] && !(s >> a & 1)) ok = false;
        if (ok) downs.push_back(s);
    }
    std::vector<std::string> names;
    std::unordered_map<unsigned, int> at;
    for (unsigned s : downs) {
        std::string nm = "{";
        bool first = true;
        for (int b = 0; b < n; ++b)
            if (s >> b & 1) {
                if (!first) nm += ",";
                nm += std::to_string(b);
                first = false;
            }
        nm += "}";
        at[s] = static_cast<int>(names.size());
        names.push_back(nm);
    }
    std::vector<std::pair<Elem, Elem>> rel;
    for (unsigned s : downs)
        for (int b = 0; b < n; ++b)
            if (!(s >> b & 1)) {
                auto it = at.find(s | (1u << b));
                if (it != at.end()) rel.emplace_back(at[s], it->second);
            }
    return build_lattice(names, rel);
}

FiniteLattice permute(const FiniteLattice& L, const std::vector<Elem>& perm) {
    std::vector<std::string> names(L.size());
    for (int x = 0; x < L.size(); ++x) names[perm[x]] = L.name(x);
    std::vector<std::pair<Elem, Elem>> rel;
    for (auto e : L.edges()) rel.emplace_back(perm[e.lo], perm[e.hi]);
    return build_lattice(names, rel);
}

}  // namespace conlat
