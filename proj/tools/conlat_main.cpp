#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "conlat/chainrep.hpp"
#include "conlat/corpus.hpp"
#include "conlat/io.hpp"
#include "json.hpp"

using namespace conlat;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("IOError", "cannot write " + path);
    out << text;
}

std::vector<std::string> names_of(const FiniteLattice& L, const std::vector<Elem>& xs) {
    std::vector<std::string> out;
    for (Elem x : xs) out.push_back(L.name(x));
    return out;
}

// --q overrides the document's q; both default to J+(D).
std::vector<Elem> pick_q(LatticeDocument doc, const FiniteLattice& D, const std::vector<std::string>& q) {
    if (!q.empty()) doc.q = q;
    for (const auto& s : doc.q.value_or(std::vector<std::string>{}))
        if (!D.find(s)) throw Error("ParseError", "q: unknown element \"" + s + "\"");
    return to_candidate(doc, D);
}

json report_json(const VerifyReport& rep) {
    json j;
    j["ok"] = rep.ok();
    j["checks"] = json::array();
    for (const auto& c : rep.checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return j;
}

int cmd_check(const std::string& path) {
    auto D = to_lattice(parse_document(slurp(path)));
    bool dist = is_distributive(D);
    json j;
    j["distributive"] = dist;
    if (dist) {
        auto r = condition_iii(D);
        j["planar"] = r.planar;
        j["join_reducible_coatoms"] = names_of(D, r.join_reducible_coatoms);
        j["condition_iii"] = r.holds;
        j["j_plus"] = names_of(D, j_plus(D));
        std::cout << j.dump(2) << "\n";
        return r.holds ? kOk : kFailed;
    }
    std::cout << j.dump(2) << "\n";
    return kFailed;
}

int cmd_chain(const std::string& path, const std::vector<std::string>& q) {
    auto doc = parse_document(slurp(path));
    auto D = to_lattice(doc);
    auto Q = pick_q(doc, D, q);
    auto lc = build_chain(D, Q);
    json j;
    j["labels"] = names_of(D, lc.labels);
    j["represents"] = names_of(D, srep(lc));
    std::cout << j.dump(2) << "\n";
    return kOk;
}

std::optional<AutMode> aut_mode(bool rigid, const std::string& gadget) {
    if (!gadget.empty()) return AutMode{false, to_lattice(parse_document(slurp(gadget)))};
    if (rigid) return AutMode{};
    return std::nullopt;
}

int cmd_construct(const std::string& path, const std::vector<std::string>& q, bool rigid, const std::string& gadget,
                  const std::string& out, const std::string& cert_path) {
    auto doc = parse_document(slurp(path));
    auto D = to_lattice(doc);
    auto Q = pick_q(doc, D, q);
    auto mode = aut_mode(rigid, gadget);
    Certificate cert;
    try {
        cert = construct_general(D, Q);
        if (mode) cert = stipulate_aut(cert, *mode);
    } catch (const Error& e) {
        if (e.kind() == "ParseError" || e.kind() == "ValidationError") throw;
        json j{{"ok", false}, {"error", e.kind()}, {"detail", e.what()}};
        std::cout << j.dump(2) << "\n";
        return kFailed;
    }
    auto rep = verify_certificate(cert);
    if (!out.empty()) {
        auto Ldoc = to_document(cert.L, doc.name.empty() ? "L" : "L(" + doc.name + ")");
        Ldoc.labels.emplace();
        for (size_t e = 0; e < cert.L.edges().size(); ++e) {
            auto E = cert.L.edges()[e];
            Ldoc.labels->push_back({cert.L.name(E.lo), cert.L.name(E.hi), D.name(cert.edge_label[e])});
        }
        spit(out, serialize(Ldoc));
    }
    if (!cert_path.empty()) spit(cert_path, serialize_certificate(cert));
    json j = report_json(rep);
    j["size"] = cert.L.size();
    j["q"] = names_of(D, cert.Q);
    std::cout << j.dump(2) << "\n";
    return rep.ok() ? kOk : kFailed;
}

int cmd_verify(const std::string& path) {
    auto rep = verify_certificate(parse_certificate(slurp(path)));
    std::cout << report_json(rep).dump(2) << "\n";
    return rep.ok() ? kOk : kFailed;
}

int cmd_enumerate(int max_j, bool all_q, bool rigid, const std::string& gadget) {
    CorpusOptions opts;
    opts.max_j = max_j;
    opts.all_q = all_q;
    opts.aut = aut_mode(rigid, gadget);
    int builds = 0, refused = 0, failures = 0;
    run_corpus(opts, [&](const CorpusCase& c) {
        if (c.condition) ++builds;
        else ++refused;
        if (c.passed()) return;
        ++failures;
        std::string why = c.cert ? c.report.first_failure()->name + ": " + c.report.first_failure()->detail : c.error;
        std::cerr << "FAIL |D|=" << c.D.size() << " Q={";
        for (size_t i = 0; i < c.Q.size(); ++i) std::cerr << (i ? "," : "") << c.D.name(c.Q[i]);
        std::cerr << "}: " << why << "\n";
    });
    json j{{"max_j", max_j}, {"builds", builds}, {"refused", refused}, {"failures", failures}};
    std::cout << j.dump(2) << "\n";
    return failures == 0 ? kOk : kFailed;
}

int cmd_dot(const std::string& path) {
    auto doc = parse_document(slurp(path));
    if (doc.labels) std::cout << export_dot(to_colored(doc));
    else std::cout << export_dot(to_lattice(doc));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite lattices with prescribed congruence and principal congruence structure"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned long seed = 0;
    app.add_option("--seed", seed, "accepted for reproducibility; no command is randomised");

    std::string input, out, cert_path, gadget;
    std::vector<std::string> q;
    bool rigid = false, all_q = false;
    int max_j = 3;

    auto* check = app.add_subcommand("check", "planarity and coatom report for a distributive lattice");
    check->add_option("D", input)->required();
    auto* chain_cmd = app.add_subcommand("chain", "a labelled chain representing Q");
    chain_cmd->add_option("D", input)->required();
    chain_cmd->add_option("--q", q)->delimiter(',');
    auto* construct = app.add_subcommand("construct", "build L with Con L ≅ D and Princ L ≅ Q");
    construct->add_option("D", input)->required();
    construct->add_option("--q", q)->delimiter(',');
    auto* r = construct->add_flag("--rigid", rigid);
    construct->add_option("--aut-gadget", gadget)->excludes(r);
    construct->add_option("-o,--out", out);
    construct->add_option("--cert", cert_path);
    auto* verify = app.add_subcommand("verify", "recheck a certificate");
    verify->add_option("cert", input)->required();
    auto* enumerate = app.add_subcommand("enumerate", "construct and verify over the distributive corpus");
    enumerate->add_option("--max-j", max_j)->check(CLI::Range(0, 5));
    enumerate->add_flag("--all-q", all_q);
    auto* er = enumerate->add_flag("--rigid", rigid);
    enumerate->add_option("--aut-gadget", gadget)->excludes(er);
    auto* dot = app.add_subcommand("dot", "DOT rendering of a lattice document");
    dot->add_option("L", input)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*check) return cmd_check(input);
        if (*chain_cmd) return cmd_chain(input, q);
        if (*construct) return cmd_construct(input, q, rigid, gadget, out, cert_path);
        if (*verify) return cmd_verify(input);
        if (*enumerate) return cmd_enumerate(max_j, all_q, rigid, gadget);
        if (*dot) return cmd_dot(input);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        bool usage = e.kind() == "ParseError" || e.kind() == "ValidationError" || e.kind() == "IOError";
        return usage ? kUsage : kFailed;
    }
    return kUsage;
}
