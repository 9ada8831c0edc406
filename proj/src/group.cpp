#include "conlat/group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "conlat/refine.hpp"

namespace conlat {

namespace {

Perm compose(const Perm& a, const Perm& b) {  // first a, then b
    Perm c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
    return c;
}

Perm identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

std::vector<Perm> closure(int degree, const std::vector<Perm>& gens, long limit) {
    std::set<Perm> seen{identity(degree)};
    std::vector<Perm> queue{identity(degree)};
    for (size_t i = 0; i < queue.size(); ++i)
        for (const auto& g : gens) {
            Perm x = compose(queue[i], g);
            if (seen.insert(x).second) {
                if (static_cast<long>(seen.size()) > limit) throw Error("TooLarge", "group order exceeds limit");
                queue.push_back(std::move(x));
            }
        }
    return queue;
}

int element_order(const Perm& p) {
    Perm x = p, id = identity(static_cast<int>(p.size()));
    int k = 1;
    while (x != id) {
        x = compose(x, p);
        ++k;
    }
    return k;
}

}  // namespace

std::vector<Perm> PermutationGroup::elements(long limit) const { return closure(degree, generators, limit); }

PermutationGroup make_group(int degree, std::vector<Perm> generators) {
    PermutationGroup g{degree, std::move(generators), 1};
    g.order = static_cast<long>(g.elements().size());
    return g;
}

PermutationGroup symmetric_group(int n) {
    std::vector<Perm> gens;
    if (n >= 2) {
        Perm swap = identity(n);
        std::swap(swap[0], swap[1]);
        gens.push_back(swap);
    }
    if (n >= 3) {
        Perm cyc(n);
        for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
        gens.push_back(cyc);
    }
    return make_group(n, gens);
}

PermutationGroup cyclic_group(int n) {
    Perm cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    return make_group(n, n >= 2 ? std::vector<Perm>{cyc} : std::vector<Perm>{});
}

PermutationGroup automorphism_group(const FiniteLattice& L, long limit) {
    std::vector<Perm> all;
    search_isomorphisms(L, L, [&](const std::vector<Elem>& m) {
        all.push_back(m);
        if (static_cast<long>(all.size()) > limit) throw Error("TooLarge", "too many automorphisms");
        return true;
    });
    PermutationGroup g{L.size(), {}, static_cast<long>(all.size())};
    std::set<Perm> span{identity(L.size())};
    for (const auto& a : all) {
        if (span.count(a)) continue;
        g.generators.push_back(a);
        auto el = closure(L.size(), g.generators, limit);
        span = std::set<Perm>(el.begin(), el.end());
    }
    return g;
}

bool is_rigid(const FiniteLattice& L) {
    int count = 0;
    search_isomorphisms(L, L, [&](const std::vector<Elem>&) { return ++count < 2; });
    return count == 1;
}

bool group_isomorphic(const PermutationGroup& g1, const PermutationGroup& g2) {
    constexpr long kMax = 10000;
    if (g1.order > kMax || g2.order > kMax) throw Error("TooLarge", "group order above 10^4");
    if (g1.order != g2.order) return false;
    auto e1 = g1.elements(kMax), e2 = g2.elements(kMax);
    std::map<Perm, int> ord2;
    std::multiset<int> m1, m2;
    for (const auto& x : e1) m1.insert(element_order(x));
    for (const auto& x : e2) {
        int o = element_order(x);
        ord2[x] = o;
        m2.insert(o);
    }
    if (m1 != m2) return false;
    if (g1.generators.empty()) return true;

    // Map generators of g1 to same-order elements of g2, then extend along
    // words and check consistency and bijectivity.
    const auto& gens = g1.generators;
    std::vector<int> gen_order;
    for (const auto& s : gens) gen_order.push_back(element_order(s));
    std::vector<const Perm*> image(gens.size());
    auto extend = [&]() {
        std::map<Perm, Perm> phi;
        Perm id1 = identity(g1.degree);
        phi[id1] = identity(g2.degree);
        std::vector<Perm> queue{id1};
        for (size_t i = 0; i < queue.size(); ++i)
            for (size_t s = 0; s < gens.size(); ++s) {
                Perm x = compose(queue[i], gens[s]);
                Perm y = compose(phi[queue[i]], *image[s]);
                auto it = phi.find(x);
                if (it != phi.end()) {
                    if (it->second != y) return false;
                    continue;
                }
                phi.emplace(x, std::move(y));
                queue.push_back(std::move(x));
            }
        std::set<Perm> img;
        for (auto& [k, v] : phi) img.insert(v);
        return static_cast<long>(img.size()) == g2.order;
    };
    std::function<bool(size_t)> rec = [&](size_t s) {
        if (s == gens.size()) return extend();
        for (const auto& [y, o] : ord2) {
            if (o != gen_order[s]) continue;
            image[s] = &y;
            if (rec(s + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

}  // namespace conlat
