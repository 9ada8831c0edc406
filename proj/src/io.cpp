#include "conlat/io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "conlat/chainrep.hpp"
#include "json.hpp"

namespace conlat {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& field, const std::string& msg) {
    throw Error("ParseError", field + ": " + msg);
}

const json& need(const json& j, const std::string& key, const std::string& where) {
    if (!j.is_object()) parse_error(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) parse_error(where + "." + key, "missing");
    return *it;
}

std::string str_at(const json& j, const std::string& field) {
    if (!j.is_string()) parse_error(field, "expected a string");
    return j.get<std::string>();
}

std::vector<std::string> strings(const json& j, const std::string& field) {
    if (!j.is_array()) parse_error(field, "expected an array");
    std::vector<std::string> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(str_at(j[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<std::string> tuple(const json& j, size_t n, const std::string& field) {
    auto v = strings(j, field);
    if (v.size() != n) parse_error(field, "expected " + std::to_string(n) + " strings");
    return v;
}

LatticeDocument doc_from_json(const json& j, const std::string& where) {
    LatticeDocument doc;
    doc.name = j.contains("name") ? str_at(j["name"], where + ".name") : "";
    doc.elements = strings(need(j, "elements", where), where + ".elements");
    std::set<std::string> known(doc.elements.begin(), doc.elements.end());
    auto check = [&](const std::string& s, const std::string& field) {
        if (!known.count(s)) parse_error(field, "unknown element \"" + s + "\"");
    };
    const auto& cov = need(j, "cover", where);
    if (!cov.is_array()) parse_error(where + ".cover", "expected an array");
    for (size_t i = 0; i < cov.size(); ++i) {
        std::string f = where + ".cover[" + std::to_string(i) + "]";
        auto p = tuple(cov[i], 2, f);
        check(p[0], f);
        check(p[1], f);
        doc.cover.emplace_back(p[0], p[1]);
    }
    if (j.contains("q")) {
        doc.q = strings(j["q"], where + ".q");
        for (const auto& s : *doc.q) check(s, where + ".q");
    }
    if (j.contains("labels")) {
        const auto& lab = j["labels"];
        if (!lab.is_array()) parse_error(where + ".labels", "expected an array");
        doc.labels.emplace();
        for (size_t i = 0; i < lab.size(); ++i) {
            std::string f = where + ".labels[" + std::to_string(i) + "]";
            auto t = tuple(lab[i], 3, f);
            check(t[0], f);
            check(t[1], f);
            doc.labels->push_back({t[0], t[1], t[2]});
        }
    }
    return doc;
}

json doc_to_json(const LatticeDocument& d0) {
    auto d = canonical(d0);
    json j;
    j["name"] = d.name;
    j["elements"] = d.elements;
    j["cover"] = json::array();
    for (const auto& [a, b] : d.cover) j["cover"].push_back({a, b});
    if (d.q) j["q"] = *d.q;
    if (d.labels) {
        j["labels"] = json::array();
        for (const auto& t : *d.labels) j["labels"].push_back({t[0], t[1], t[2]});
    }
    return j;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        parse_error("<root>", e.what());
    }
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string dot_body(const FiniteLattice& L, const std::vector<std::string>* edge_labels) {
    std::ostringstream os;
    os << "digraph lattice {\n  rankdir=BT;\n  node [shape=circle, fontsize=10];\n";
    for (Elem x = 0; x < L.size(); ++x) os << "  n" << x << " [label=" << quote(L.name(x)) << "];\n";
    std::map<int, std::vector<Elem>> rank;
    for (Elem x = 0; x < L.size(); ++x) rank[L.height(x)].push_back(x);
    for (const auto& [h, xs] : rank) {
        os << "  { rank=same;";
        for (Elem x : xs) os << " n" << x << ";";
        os << " }\n";
    }
    for (size_t e = 0; e < L.edges().size(); ++e) {
        auto E = L.edges()[e];
        os << "  n" << E.lo << " -> n" << E.hi;
        if (edge_labels) os << " [label=" << quote((*edge_labels)[e]) << "]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace

LatticeDocument canonical(LatticeDocument doc) {
    std::sort(doc.elements.begin(), doc.elements.end());
    std::sort(doc.cover.begin(), doc.cover.end());
    doc.cover.erase(std::unique(doc.cover.begin(), doc.cover.end()), doc.cover.end());
    if (doc.q) {
        std::sort(doc.q->begin(), doc.q->end());
        doc.q->erase(std::unique(doc.q->begin(), doc.q->end()), doc.q->end());
    }
    if (doc.labels) std::sort(doc.labels->begin(), doc.labels->end());
    return doc;
}

LatticeDocument parse_document(const std::string& text) { return doc_from_json(parse_json(text), "<root>"); }

std::string serialize(const LatticeDocument& doc) { return doc_to_json(doc).dump(2) + "\n"; }

FiniteLattice to_lattice(const LatticeDocument& doc) {
    try {
        return from_cover(doc.elements, doc.cover);
    } catch (const Error& e) {
        throw Error("ValidationError", e.what());
    }
}

ColoredLattice to_colored(const LatticeDocument& doc) {
    auto L = to_lattice(doc);
    if (!doc.labels) throw Error("ValidationError", "document has no labels");
    std::vector<std::optional<Color>> col(L.edges().size());
    for (const auto& t : *doc.labels) {
        int e = L.edge_index(L.index(t[0]), L.index(t[1]));
        if (e < 0) throw Error("ValidationError", "label on non-cover " + t[0] + " < " + t[1]);
        if (col[e]) throw Error("ValidationError", "cover " + t[0] + " < " + t[1] + " labelled twice");
        col[e] = Color{t[2], 0};
    }
    std::vector<Color> flat;
    for (size_t e = 0; e < col.size(); ++e) {
        if (!col[e]) {
            auto E = L.edges()[e];
            throw Error("ValidationError", "cover " + L.name(E.lo) + " < " + L.name(E.hi) + " has no label");
        }
        flat.push_back(*col[e]);
    }
    return make_colored(std::move(L), flat);
}

std::vector<Elem> to_candidate(const LatticeDocument& doc, const FiniteLattice& L) {
    std::vector<Elem> Q;
    if (!doc.q) return j_plus(L);
    for (const auto& s : *doc.q) Q.push_back(L.index(s));
    std::sort(Q.begin(), Q.end());
    Q.erase(std::unique(Q.begin(), Q.end()), Q.end());
    if (!is_candidate_subset(L, Q)) throw Error("ValidationError", "q does not contain J+(D)");
    return Q;
}

LatticeDocument to_document(const FiniteLattice& L, const std::string& name) {
    LatticeDocument doc;
    doc.name = name;
    doc.elements = L.names();
    for (auto e : L.edges()) doc.cover.emplace_back(L.name(e.lo), L.name(e.hi));
    return canonical(std::move(doc));
}

LatticeDocument to_document(const ColoredLattice& cl, const std::string& name) {
    auto doc = to_document(cl.lattice, name);
    doc.labels.emplace();
    const auto& L = cl.lattice;
    for (size_t e = 0; e < L.edges().size(); ++e) {
        auto E = L.edges()[e];
        doc.labels->push_back({L.name(E.lo), L.name(E.hi), cl.colors.color(cl.cmap[e]).str()});
    }
    return canonical(std::move(doc));
}

std::string export_dot(const FiniteLattice& L) { return dot_body(L, nullptr); }

std::string export_dot(const ColoredLattice& cl) {
    std::vector<std::string> labels;
    for (int c : cl.cmap) labels.push_back(cl.colors.color(c).str());
    return dot_body(cl.lattice, &labels);
}

std::string serialize_certificate(const Certificate& cert) {
    const auto& L = cert.L;
    const auto& D = cert.D;
    json j;
    j["format"] = "conlat-certificate/1";
    auto Ldoc = to_document(L, "L");
    Ldoc.labels.emplace();
    for (size_t e = 0; e < L.edges().size() && e < cert.edge_label.size(); ++e) {
        auto E = L.edges()[e];
        Ldoc.labels->push_back({L.name(E.lo), L.name(E.hi), D.name(cert.edge_label[e])});
    }
    j["L"] = doc_to_json(Ldoc);
    auto Ddoc = to_document(D, "D");
    Ddoc.q.emplace();
    for (Elem x : cert.Q) Ddoc.q->push_back(D.name(x));
    j["D"] = doc_to_json(Ddoc);
    std::vector<std::pair<std::vector<std::vector<std::string>>, std::string>> phi;
    for (const auto& [th, d] : cert.phi) {
        std::vector<std::vector<std::string>> blocks;
        for (const auto& b : th.blocks()) {
            std::vector<std::string> names;
            for (Elem x : b) names.push_back(L.name(x));
            std::sort(names.begin(), names.end());
            blocks.push_back(std::move(names));
        }
        std::sort(blocks.begin(), blocks.end());
        phi.emplace_back(std::move(blocks), D.name(d));
    }
    std::sort(phi.begin(), phi.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    j["phi"] = json::array();
    for (const auto& [blocks, d] : phi) j["phi"].push_back({{"blocks", blocks}, {"value", d}});
    j["ji_top"] = cert.ji_top;
    std::vector<std::string> cs, cl;
    for (Elem x : cert.cstar) cs.push_back(L.name(x));
    for (Elem x : cert.cstar_labels) cl.push_back(D.name(x));
    j["cstar"] = cs;
    j["cstar_labels"] = cl;
    j["thick"] = json::array();
    for (auto e : cert.thick) j["thick"].push_back({L.name(e.lo), L.name(e.hi)});
    j["log"] = cert.log;
    return j.dump(2) + "\n";
}

Certificate parse_certificate(const std::string& text) {
    auto j = parse_json(text);
    if (str_at(need(j, "format", "<root>"), "format") != "conlat-certificate/1")
        parse_error("format", "unsupported certificate format");
    Certificate cert;
    auto Ldoc = doc_from_json(need(j, "L", "<root>"), "L");
    auto Ddoc = doc_from_json(need(j, "D", "<root>"), "D");
    cert.L = to_lattice(Ldoc);
    cert.D = to_lattice(Ddoc);
    const auto& L = cert.L;
    const auto& D = cert.D;
    auto d_elem = [&](const std::string& s, const std::string& f) {
        auto x = D.find(s);
        if (!x) parse_error(f, "unknown element of D \"" + s + "\"");
        return *x;
    };
    if (!Ddoc.q) parse_error("D.q", "missing");
    for (const auto& s : *Ddoc.q) cert.Q.push_back(D.index(s));
    std::sort(cert.Q.begin(), cert.Q.end());
    if (!Ldoc.labels) parse_error("L.labels", "missing");
    cert.edge_label.assign(L.edges().size(), -1);
    for (const auto& t : *Ldoc.labels) {
        int e = L.edge_index(L.index(t[0]), L.index(t[1]));
        if (e < 0) parse_error("L.labels", "label on a non-cover");
        cert.edge_label[e] = d_elem(t[2], "L.labels");
    }
    const auto& phi = need(j, "phi", "<root>");
    if (!phi.is_array()) parse_error("phi", "expected an array");
    for (size_t i = 0; i < phi.size(); ++i) {
        std::string f = "phi[" + std::to_string(i) + "]";
        std::vector<Elem> rep(L.size(), -1);
        const auto& blocks = need(phi[i], "blocks", f);
        if (!blocks.is_array()) parse_error(f + ".blocks", "expected an array");
        for (const auto& b : blocks) {
            auto names = strings(b, f + ".blocks");
            if (names.empty()) parse_error(f + ".blocks", "empty block");
            Elem r = L.size();
            for (const auto& s : names) {
                auto x = L.find(s);
                if (!x) parse_error(f, "unknown element of L \"" + s + "\"");
                r = std::min(r, *x);
            }
            for (const auto& s : names) {
                Elem x = L.index(s);
                if (rep[x] >= 0) parse_error(f, "element in two blocks");
                rep[x] = r;
            }
        }
        if (std::count(rep.begin(), rep.end(), -1)) parse_error(f, "blocks do not cover L");
        cert.phi.emplace_back(Congruence(rep), d_elem(str_at(need(phi[i], "value", f), f + ".value"), f));
    }
    cert.ji_top = j.value("ji_top", false);
    if (j.contains("cstar"))
        for (const auto& s : strings(j["cstar"], "cstar")) {
            auto x = L.find(s);
            if (!x) parse_error("cstar", "unknown element \"" + s + "\"");
            cert.cstar.push_back(*x);
        }
    if (j.contains("cstar_labels"))
        for (const auto& s : strings(j["cstar_labels"], "cstar_labels")) cert.cstar_labels.push_back(d_elem(s, "cstar_labels"));
    if (j.contains("thick"))
        for (const auto& p : j["thick"]) {
            auto t = tuple(p, 2, "thick");
            cert.thick.push_back({L.index(t[0]), L.index(t[1])});
        }
    if (j.contains("log")) cert.log = strings(j["log"], "log");
    return cert;
}

}  // namespace conlat
