#include <regex>

#include "conlat/corpus.hpp"
#include "conlat/io.hpp"
#include "doctest.h"

using namespace conlat;

namespace {

size_t count(const std::string& s, const std::string& pat) {
    std::regex re(pat);
    return static_cast<size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

}  // namespace

TEST_CASE("C2 document round-trips") {
    const std::string canon =
        "{\n  \"cover\": [\n    [\n      \"0\",\n      \"1\"\n    ]\n  ],\n  \"elements\": [\n    \"0\",\n    \"1\"\n  ],\n"
        "  \"name\": \"C2\"\n}\n";
    auto doc = parse_document(R"({"name":"C2","elements":["1","0"],"cover":[["0","1"]]})");
    CHECK(serialize(doc) == canon);
    CHECK(serialize(parse_document(canon)) == canon);
    CHECK(to_lattice(doc).size() == 2);
}

TEST_CASE("serialize is canonical on generated lattices") {
    for (const auto& D : enumerate_distributive(3)) {
        auto doc = to_document(D, "D");
        auto text = serialize(doc);
        auto back = parse_document(text);
        CHECK(serialize(back) == text);
        CHECK(isomorphic(to_lattice(back), D));
        // element order in the input does not matter
        std::reverse(doc.elements.begin(), doc.elements.end());
        std::reverse(doc.cover.begin(), doc.cover.end());
        CHECK(serialize(doc) == text);
    }
}

TEST_CASE("document errors") {
    CHECK_THROWS_WITH_AS(parse_document(R"({"elements":["0"],"cover":[["0","x"]]})"),
                         doctest::Contains("ParseError: <root>.cover[0]"), Error);
    CHECK_THROWS_WITH_AS(parse_document(R"({"elements":["0"]})"), doctest::Contains("<root>.cover: missing"), Error);
    CHECK_THROWS_WITH_AS(parse_document("{"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_document(R"({"elements":["0",1],"cover":[]})"),
                         doctest::Contains("<root>.elements[1]"), Error);
    // two maximal elements
    auto two_tops = parse_document(R"({"elements":["0","a","b"],"cover":[["0","a"],["0","b"]]})");
    CHECK_THROWS_WITH_AS(to_lattice(two_tops), doctest::Contains("ValidationError"), Error);
    auto cyc = parse_document(R"({"elements":["0","1"],"cover":[["0","1"],["1","0"]]})");
    CHECK_THROWS_WITH_AS(to_lattice(cyc), doctest::Contains("CycleError"), Error);
}

TEST_CASE("candidate subsets from documents") {
    auto doc = parse_document(
        R"({"elements":["0","a","b","1"],"cover":[["0","a"],["0","b"],["a","1"],["b","1"]],"q":["0","a","b","1"]})");
    auto B2 = to_lattice(doc);
    CHECK(to_candidate(doc, B2).size() == 4);
    doc.q = std::vector<std::string>{"0", "a", "1"};
    CHECK_THROWS_WITH_AS(to_candidate(doc, B2), doctest::Contains("J+"), Error);
    doc.q.reset();
    CHECK(to_candidate(doc, B2) == j_plus(B2));
}

TEST_CASE("coloured documents") {
    auto doc = parse_document(R"({"elements":["0","a","b","1"],"cover":[["0","a"],["0","b"],["a","1"],["b","1"]],
        "labels":[["0","a","x"],["b","1","x"],["0","b","y"],["a","1","y"]]})");
    auto cl = to_colored(doc);
    CHECK(cl.colors.size() == 2);
    CHECK(is_quasi_coloring(cl).ok);
    CHECK(serialize(to_document(cl, "")) == serialize(doc));
    doc.labels->pop_back();
    CHECK_THROWS_WITH_AS(to_colored(doc), doctest::Contains("no label"), Error);
}

TEST_CASE("export_dot") {
    auto c2 = export_dot(chain(2));
    CHECK(count(c2, R"(n\d+ \[label=)") == 2);
    CHECK(count(c2, R"(n\d+ -> n\d+)") == 1);

    auto doc = parse_document(R"({"elements":["0","a","b","1"],"cover":[["0","a"],["0","b"],["a","1"],["b","1"]],
        "labels":[["0","a","x"],["b","1","x"],["0","b","y"],["a","1","y"]]})");
    auto b2 = export_dot(to_colored(doc));
    CHECK(count(b2, R"(n\d+ -> n\d+ \[label="[xy]"\])") == 4);
    CHECK(count(b2, "rank=same") == 3);

    auto D = direct_product(chain(3), chain(2));
    auto cert = construct_general(D, j_plus(D));
    CHECK(count(export_dot(cert.L), R"(n\d+ \[label=)") == static_cast<size_t>(cert.L.size()));
}

TEST_CASE("certificates round-trip and still verify") {
    auto D = direct_product(chain(3), chain(2));
    for (const auto& Q : candidate_subsets(D)) {
        auto cert = construct_general(D, Q);
        auto text = serialize_certificate(cert);
        auto back = parse_certificate(text);
        CHECK(verify_certificate(back).ok());
        CHECK(serialize_certificate(back) == text);
    }
    CHECK_THROWS_WITH_AS(parse_certificate(R"({"format":"other"})"), doctest::Contains("format"), Error);
}

TEST_CASE("candidate_subsets") {
    auto D = direct_product(chain(3), chain(2));
    // J+ misses only the join-reducible coatom
    auto qs = candidate_subsets(D);
    size_t extra = D.size() - j_plus(D).size();
    CHECK(qs.size() == (1u << extra));
    CHECK(qs.front() == j_plus(D));
    for (const auto& Q : qs) CHECK(is_candidate_subset(D, Q));
}
