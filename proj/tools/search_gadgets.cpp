// Regenerates (or checks) the frozen gadget data under data/.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "conlat/gadgets.hpp"
#include "conlat/io.hpp"
#include "conlat/small.hpp"

using namespace conlat;
namespace fs = std::filesystem;

namespace {

// Smallest lattice with Con a 3-chain and an atom-coatom b such that [0,b]
// generates the middle congruence and [b,1] generates ∇.
std::optional<FiniteLattice> search_k(int max_n) {
    std::optional<FiniteLattice> found;
    for (int n = 2; n <= max_n && !found; ++n)
        for_each_small_lattice(n, [&](const FiniteLattice& L) {
            if (congruence_lattice(L).lattice.size() != 3) return true;
            for (Elem b : atoms(L)) {
                if (L.upper_covers(b) != std::vector<Elem>{L.top()}) continue;
                if (!principal_congruence(L, L.bottom(), b).is_full() && principal_congruence(L, b, L.top()).is_full()) {
                    found = L;
                    return false;
                }
            }
            return true;
        });
    return found;
}

std::vector<std::pair<std::string, std::string>> expected() {
    std::vector<std::pair<std::string, std::string>> files;
    auto k = search_k(6);
    if (!k) throw Error("NotFound", "no K instance up to 6 elements");
    auto stored = gadget_K({"alpha", 0}, {"beta", 0});
    if (!isomorphic(*k, stored.colored.lattice)) throw Error("Mismatch", "search and k_lattice() disagree");
    files.emplace_back("k_gadget.json", serialize(to_document(stored.colored, "K")));
    for (int i = 0; i < rigid_simple_family_size(); ++i) {
        char nm[32];
        std::snprintf(nm, sizeof nm, "rigid_simple/rs%02d.json", i + 1);
        files.emplace_back(nm, serialize(to_document(rigid_simple(i), "rs" + std::to_string(i + 1))));
    }
    return files;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"regenerate or check the frozen gadget data"};
    std::string dir = "data";
    bool check = false;
    app.add_option("--dir", dir);
    app.add_flag("--check", check, "compare instead of writing");
    CLI11_PARSE(app, argc, argv);

    try {
        int bad = 0;
        for (const auto& [name, text] : expected()) {
            fs::path p = fs::path(dir) / name;
            if (check) {
                std::ifstream in(p);
                std::stringstream ss;
                ss << in.rdbuf();
                if (!in || ss.str() != text) {
                    std::cerr << "mismatch: " << p << "\n";
                    ++bad;
                }
            } else {
                fs::create_directories(p.parent_path());
                std::ofstream(p) << text;
                std::cout << "wrote " << p << "\n";
            }
        }
        if (check) std::cout << (bad ? "data differs from the generators\n" : "data matches the generators\n");
        return bad ? 1 : 0;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
