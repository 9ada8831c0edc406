#include "conlat/congruence.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace conlat {
namespace {

struct UnionFind {
    std::vector<int> parent;
    int blocks;
    explicit UnionFind(int n) : parent(n), blocks(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        --blocks;
        return true;
    }
    Congruence canonical() {
        std::vector<Elem> rep(parent.size(), -1);
        std::vector<Elem> first(parent.size(), -1);
        for (int x = 0; x < static_cast<int>(parent.size()); ++x) {
            int r = find(x);
            if (first[r] < 0) first[r] = x;
            rep[x] = first[r];
        }
        return Congruence(std::move(rep));
    }
};

Congruence closure(const FiniteLattice& L, Elem a, Elem b, const std::vector<Elem>& jz,
                   const std::vector<Elem>& mz) {
    UnionFind uf(L.size());
    std::vector<std::pair<Elem, Elem>> work{{a, b}};
    while (!work.empty() && uf.blocks > 1) {
        auto [x, y] = work.back();
        work.pop_back();
        if (!uf.unite(x, y)) continue;
        for (Elem z : jz) {
            Elem u = L.join(x, z), v = L.join(y, z);
            if (u != v) work.emplace_back(u, v);
        }
        for (Elem z : mz) {
            Elem u = L.meet(x, z), v = L.meet(y, z);
            if (u != v) work.emplace_back(u, v);
        }
    }
    if (uf.blocks == 1) return Congruence::full(L.size());
    return uf.canonical();
}

}  // namespace

Congruence::Congruence(std::vector<Elem> rep) : rep_(std::move(rep)) {}

Congruence Congruence::identity(int n) {
    std::vector<Elem> r(n);
    std::iota(r.begin(), r.end(), 0);
    return Congruence(std::move(r));
}

Congruence Congruence::full(int n) { return Congruence(std::vector<Elem>(n, 0)); }

int Congruence::block_count() const {
    int c = 0;
    for (int x = 0; x < size(); ++x)
        if (rep_[x] == x) ++c;
    return c;
}

std::vector<std::vector<Elem>> Congruence::blocks() const {
    std::vector<std::vector<Elem>> out;
    std::vector<int> at(size(), -1);
    for (int x = 0; x < size(); ++x) {
        if (rep_[x] == x) {
            at[x] = static_cast<int>(out.size());
            out.push_back({});
        }
        out[at[rep_[x]]].push_back(x);
    }
    return out;
}

bool Congruence::refines(const Congruence& other) const {
    for (int x = 0; x < size(); ++x)
        if (!other.same(x, rep_[x])) return false;
    return true;
}

Congruence principal_congruence(const FiniteLattice& L, Elem a, Elem b) {
    if (a == b) return Congruence::identity(L.size());
    return closure(L, L.meet(a, b), L.join(a, b), join_irreducibles(L), meet_irreducibles(L));
}

Congruence principal_congruence(const FiniteLattice& L, Edge p) { return principal_congruence(L, p.lo, p.hi); }

Congruence principal_congruence_naive(const FiniteLattice& L, Elem a, Elem b) {
    std::vector<Elem> all(L.size());
    std::iota(all.begin(), all.end(), 0);
    if (a == b) return Congruence::identity(L.size());
    return closure(L, a, b, all, all);
}

Congruence join(const Congruence& a, const Congruence& b) {
    UnionFind uf(a.size());
    for (int x = 0; x < a.size(); ++x) {
        uf.unite(x, a.rep(x));
        uf.unite(x, b.rep(x));
    }
    return uf.canonical();
}

bool is_congruence(const FiniteLattice& L, const Congruence& c) {
    const int n = L.size();
    for (int x = 0; x < n; ++x) {
        Elem y = c.rep(x);
        if (y == x) continue;
        for (int z = 0; z < n; ++z)
            if (!c.same(L.join(x, z), L.join(y, z)) || !c.same(L.meet(x, z), L.meet(y, z))) return false;
    }
    return true;
}

EdgeCongruences edge_congruences(const FiniteLattice& L) {
    const auto& E = L.edges();
    const int m = static_cast<int>(E.size());
    // Opposite sides of a covering square generate the same congruence.
    UnionFind sq(m);
    for (int x = 0; x < L.size(); ++x) {
        const auto& up = L.upper_covers(x);
        for (size_t i = 0; i < up.size(); ++i)
            for (size_t j = i + 1; j < up.size(); ++j) {
                Elem a = up[i], b = up[j], t = L.join(a, b);
                int at = L.edge_index(a, t), bt = L.edge_index(b, t);
                if (at < 0 || bt < 0) continue;
                sq.unite(L.edge_index(x, a), bt);
                sq.unite(L.edge_index(x, b), at);
            }
    }
    EdgeCongruences ec;
    ec.edge_class.assign(m, -1);
    std::map<std::vector<Elem>, int> seen;
    std::vector<int> class_of_root(m, -1);
    const auto jz = join_irreducibles(L), mz = meet_irreducibles(L);
    for (int e = 0; e < m; ++e) {
        int r = sq.find(e);
        if (class_of_root[r] < 0) {
            Congruence c = closure(L, E[r].lo, E[r].hi, jz, mz);
            auto [it, fresh] = seen.emplace(c.reps(), ec.size());
            if (fresh) {
                ec.jcon.push_back(std::move(c));
                ec.generator.push_back(E[r]);
            }
            class_of_root[r] = it->second;
        }
        ec.edge_class[e] = class_of_root[r];
    }
    const int k = ec.size();
    ec.below.assign(k, Bits(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            if (ec.jcon[i].same(ec.generator[j].lo, ec.generator[j].hi)) ec.below[i].set(j);
    return ec;
}

ConLattice congruence_lattice(const FiniteLattice& L, int limit) {
    auto ec = edge_congruences(L);
    const int n = L.size();
    std::map<std::vector<Elem>, int> seen;
    std::vector<Congruence> all;
    auto add = [&](Congruence c) {
        if (seen.emplace(c.reps(), static_cast<int>(all.size())).second) {
            all.push_back(std::move(c));
            if (static_cast<int>(all.size()) > limit) throw Error("TooLarge", "congruence lattice exceeds limit");
        }
    };
    add(Congruence::identity(n));
    for (const auto& c : ec.jcon) add(c);
    for (size_t i = 0; i < all.size(); ++i)
        for (const auto& j : ec.jcon) add(join(all[i], j));
    // Sort by block count descending so Δ comes first, then canonical order.
    std::vector<int> order(all.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        int ba = all[a].block_count(), bb = all[b].block_count();
        if (ba != bb) return ba > bb;
        return all[a] < all[b];
    });
    ConLattice out;
    std::vector<std::string> names;
    for (int i = 0; i < static_cast<int>(order.size()); ++i) {
        out.dict.push_back(all[order[i]]);
        names.push_back("c" + std::to_string(i));
    }
    std::vector<std::pair<Elem, Elem>> rel;
    for (int i = 0; i < static_cast<int>(out.dict.size()); ++i)
        for (int j = 0; j < static_cast<int>(out.dict.size()); ++j)
            if (i != j && out.dict[i].refines(out.dict[j])) rel.emplace_back(i, j);
    out.lattice = build_lattice(names, rel);
    if (!is_distributive(out.lattice)) throw Error("InternalError", "congruence lattice is not distributive");
    return out;
}

std::vector<Bits> principal_downsets(const FiniteLattice& L, const EdgeCongruences& ec) {
    const int n = L.size();
    const int k = ec.size();
    std::set<Bits> out;
    out.insert(Bits(k));
    const auto& topo = L.linear_order();
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[topo[i]] = i;
    std::vector<Bits> ds(n, Bits(k));
    for (int a = 0; a < n; ++a) {
        ds[a].reset();
        for (int i = pos[a] + 1; i < n; ++i) {
            Elem b = topo[i];
            if (!L.leq(a, b)) continue;
            for (Elem c : L.lower_covers(b)) {
                if (!L.leq(a, c)) continue;
                ds[b] = ds[c] | ec.below[ec.edge_class[L.edge_index(c, b)]];
                break;
            }
            out.insert(ds[b]);
        }
    }
    return {out.begin(), out.end()};
}

std::vector<Congruence> princ_set(const FiniteLattice& L) {
    auto ec = edge_congruences(L);
    std::set<Congruence> out;
    for (const auto& d : principal_downsets(L, ec)) {
        Congruence c = Congruence::identity(L.size());
        for (auto j = d.find_first(); j != Bits::npos; j = d.find_next(j)) c = join(c, ec.jcon[j]);
        out.insert(c);
    }
    return {out.begin(), out.end()};
}

std::vector<Congruence> princ_set_naive(const FiniteLattice& L) {
    std::set<Congruence> out;
    for (int a = 0; a < L.size(); ++a)
        for (int b = 0; b < L.size(); ++b) out.insert(principal_congruence_naive(L, a, b));
    return {out.begin(), out.end()};
}

bool prime_perspective_down(const FiniteLattice& L, Edge p1, Edge p2) {
    return p1.hi == L.join(p1.lo, p2.hi) && L.leq(L.meet(p1.lo, p2.hi), p2.lo);
}

bool prime_perspective_up(const FiniteLattice& L, Edge p1, Edge p2) {
    return p1.lo == L.meet(p1.hi, p2.lo) && L.leq(p2.hi, L.join(p1.hi, p2.lo));
}

std::vector<Bits> prime_projectivity_closure(const FiniteLattice& L) {
    const auto& E = L.edges();
    const int m = static_cast<int>(E.size());
    std::vector<std::vector<int>> step(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j && (prime_perspective_down(L, E[i], E[j]) || prime_perspective_up(L, E[i], E[j])))
                step[i].push_back(j);
    std::vector<Bits> reach(m, Bits(m));
    for (int s = 0; s < m; ++s) {
        std::vector<int> stack{s};
        reach[s].set(s);
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : step[x])
                if (!reach[s][y]) {
                    reach[s].set(y);
                    stack.push_back(y);
                }
        }
    }
    return reach;
}

bool prime_projectivity(const FiniteLattice& L, Edge p, Edge q) {
    int ip = L.edge_index(p.lo, p.hi), iq = L.edge_index(q.lo, q.hi);
    if (ip < 0 || iq < 0) throw Error("NotPrime", "argument is not a prime interval");
    return prime_projectivity_closure(L)[ip][iq];
}

bool is_01_separating(const FiniteLattice& L) {
    if (L.size() < 2) throw Error("TooSmall", "separation needs at least two elements");
    auto ec = edge_congruences(L);
    const int k = ec.size();
    Bits all(k);
    all.set();
    // Downsets of con(0,x) and con(x,1) along a maximal chain.
    std::vector<Bits> from0(L.size(), Bits(k)), to1(L.size(), Bits(k));
    const auto& topo = L.linear_order();
    for (Elem b : topo)
        if (!L.lower_covers(b).empty()) {
            Elem c = L.lower_covers(b)[0];
            from0[b] = from0[c] | ec.below[ec.edge_class[L.edge_index(c, b)]];
        }
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        Elem a = *it;
        if (!L.upper_covers(a).empty()) {
            Elem c = L.upper_covers(a)[0];
            to1[a] = to1[c] | ec.below[ec.edge_class[L.edge_index(a, c)]];
        }
    }
    for (int x = 0; x < L.size(); ++x) {
        if (x == L.bottom() || x == L.top()) continue;
        if (from0[x] != all || to1[x] != all) return false;
    }
    return true;
}

}  // namespace conlat
