#include "conlat/refine.hpp"

#include <algorithm>
#include <map>

namespace conlat {
namespace {

std::vector<int> coheights(const FiniteLattice& L) {
    std::vector<int> h(L.size(), 0);
    const auto& topo = L.linear_order();
    for (auto it = topo.rbegin(); it != topo.rend(); ++it)
        for (Elem c : L.upper_covers(*it)) h[*it] = std::max(h[*it], h[c] + 1);
    return h;
}

struct Refiner {
    const FiniteLattice& A;
    const FiniteLattice& B;
    const std::function<bool(const std::vector<Elem>&)>& visit;
    bool stopped = false;

    static int count_colors(const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> all(a);
        all.insert(all.end(), b.begin(), b.end());
        std::sort(all.begin(), all.end());
        return static_cast<int>(std::unique(all.begin(), all.end()) - all.begin());
    }

    // Refines both colourings jointly; false if the colour histograms diverge.
    bool refine(std::vector<int>& ca, std::vector<int>& cb) const {
        int classes = count_colors(ca, cb);
        for (;;) {
            std::map<std::vector<int>, int> ids;
            auto sig = [&](const FiniteLattice& L, const std::vector<int>& c, Elem x) {
                std::vector<int> s{c[x]};
                std::vector<int> u, d;
                for (Elem y : L.upper_covers(x)) u.push_back(c[y]);
                for (Elem y : L.lower_covers(x)) d.push_back(c[y]);
                std::sort(u.begin(), u.end());
                std::sort(d.begin(), d.end());
                s.push_back(static_cast<int>(u.size()));
                s.insert(s.end(), u.begin(), u.end());
                s.insert(s.end(), d.begin(), d.end());
                return s;
            };
            std::vector<std::vector<int>> sa(A.size()), sb(B.size());
            for (int x = 0; x < A.size(); ++x) ids.emplace(sa[x] = sig(A, ca, x), 0);
            for (int x = 0; x < B.size(); ++x) ids.emplace(sb[x] = sig(B, cb, x), 0);
            int next = 0;
            for (auto& kv : ids) kv.second = next++;
            for (int x = 0; x < A.size(); ++x) ca[x] = ids[sa[x]];
            for (int x = 0; x < B.size(); ++x) cb[x] = ids[sb[x]];
            std::vector<int> ha(next, 0), hb(next, 0);
            for (int c : ca) ++ha[c];
            for (int c : cb) ++hb[c];
            if (ha != hb) return false;
            if (next == classes) return true;
            classes = next;
        }
    }

    void leaf(const std::vector<int>& ca, const std::vector<int>& cb) {
        std::vector<Elem> byColor(B.size(), -1);
        for (int y = 0; y < B.size(); ++y) byColor[cb[y]] = y;
        std::vector<Elem> m(A.size());
        for (int x = 0; x < A.size(); ++x) m[x] = byColor[ca[x]];
        for (auto e : A.edges())
            if (!B.covers(m[e.lo], m[e.hi])) return;
        if (!visit(m)) stopped = true;
    }

    void search(std::vector<int> ca, std::vector<int> cb) {
        if (stopped || !refine(ca, cb)) return;
        std::vector<int> size(A.size() + B.size() + 1, 0);
        for (int c : ca) ++size[c];
        int pick = -1;
        for (int x = 0; x < A.size(); ++x)
            if (size[ca[x]] > 1 && (pick < 0 || size[ca[x]] < size[ca[pick]])) pick = x;
        if (pick < 0) {
            leaf(ca, cb);
            return;
        }
        const int fresh = static_cast<int>(size.size());
        for (int y = 0; y < B.size() && !stopped; ++y) {
            if (cb[y] != ca[pick]) continue;
            auto na = ca, nb = cb;
            na[pick] = fresh;
            nb[y] = fresh;
            search(std::move(na), std::move(nb));
        }
    }
};

}  // namespace

void search_isomorphisms(const FiniteLattice& A, const FiniteLattice& B,
                         const std::function<bool(const std::vector<Elem>&)>& visit) {
    if (A.size() != B.size() || A.edges().size() != B.edges().size()) return;
    auto ha = coheights(A), hb = coheights(B);
    std::map<std::vector<int>, int> ids;
    auto key = [](const FiniteLattice& L, const std::vector<int>& coh, Elem x) {
        return std::vector<int>{L.height(x), coh[x], static_cast<int>(L.upper_covers(x).size()),
                                static_cast<int>(L.lower_covers(x).size())};
    };
    for (int x = 0; x < A.size(); ++x) ids.emplace(key(A, ha, x), 0);
    for (int x = 0; x < B.size(); ++x) ids.emplace(key(B, hb, x), 0);
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    std::vector<int> ca(A.size()), cb(B.size());
    for (int x = 0; x < A.size(); ++x) ca[x] = ids[key(A, ha, x)];
    for (int x = 0; x < B.size(); ++x) cb[x] = ids[key(B, hb, x)];
    Refiner r{A, B, visit};
    r.search(std::move(ca), std::move(cb));
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteLattice& A, const FiniteLattice& B) {
    std::optional<std::vector<Elem>> out;
    search_isomorphisms(A, B, [&](const std::vector<Elem>& m) {
        out = m;
        return false;
    });
    return out;
}

bool isomorphic(const FiniteLattice& A, const FiniteLattice& B) { return find_isomorphism(A, B).has_value(); }

}  // namespace conlat
