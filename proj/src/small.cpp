#include "conlat/small.hpp"

#include <cstdint>
#include <string>

namespace conlat {

namespace {

struct Enumerator {
    int n, m;  // elements, inner elements
    std::vector<uint32_t> up;  // inner index -> strict up-set over inner points
    const std::function<bool(const FiniteLattice&)>& visit;
    std::vector<std::string> names;
    bool stop = false;

    // Joins exist for every pair of inner points: the common up-set (plus
    // the top) must have a least element.
    bool joins_exist() const {
        for (int a = 0; a < m; ++a)
            for (int b = a + 1; b < m; ++b) {
                uint32_t ua = up[a] | (1u << a), ub = up[b] | (1u << b);
                uint32_t common = ua & ub;
                if (!common) continue;  // join is the top
                bool found = false;
                for (int z = 0; z < m && !found; ++z)
                    if ((common >> z & 1) && ((up[z] | (1u << z)) & common) == common) found = true;
                if (!found) return false;
            }
        return true;
    }

    void emit() {
        std::vector<std::pair<Elem, Elem>> rel;
        for (int i = 0; i < m; ++i) {
            rel.emplace_back(0, i + 1);
            rel.emplace_back(i + 1, n - 1);
            for (int j = 0; j < m; ++j)
                if (up[i] >> j & 1) rel.emplace_back(i + 1, j + 1);
        }
        if (m == 0 && n == 2) rel.emplace_back(0, 1);
        if (!visit(build_lattice(names, rel))) stop = true;
    }

    // Inner point j picks its strict down-set among 0..j-1; it must be
    // down-closed in the poset built so far.
    void rec(int j) {
        if (stop) return;
        if (j == m) {
            if (joins_exist()) emit();
            return;
        }
        for (uint32_t s = 0; s < (1u << j); ++s) {
            bool closed = true;
            for (int x = 0; x < j && closed; ++x)
                if (s >> x & 1)
                    for (int y = 0; y < j; ++y)
                        if ((up[y] >> x & 1) && !(s >> y & 1)) closed = false;
            if (!closed) continue;
            for (int x = 0; x < j; ++x)
                if (s >> x & 1) up[x] |= 1u << j;
            rec(j + 1);
            for (int x = 0; x < j; ++x) up[x] &= ~(1u << j);
            if (stop) return;
        }
    }
};

}  // namespace

void for_each_small_lattice(int n, const std::function<bool(const FiniteLattice&)>& visit) {
    if (n < 1 || n > 24) throw Error("TooLarge", "small lattice enumeration supports 1..24 elements");
    if (n == 1) {
        visit(build_lattice({"0"}, {}));
        return;
    }
    Enumerator e{n, n - 2, std::vector<uint32_t>(n - 2, 0), visit, {}};
    e.names.push_back("0");
    for (int i = 1; i < n - 1; ++i) e.names.push_back("x" + std::to_string(i));
    e.names.push_back("1");
    e.rec(0);
}

}  // namespace conlat
