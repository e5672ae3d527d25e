#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cubecover/document.hpp"
#include "cubecover/export.hpp"

using namespace cubecover;

namespace {

PointQ pt(std::initializer_list<Rat> c) { return PointQ(c); }

PolyChain random_chain(std::mt19937_64& rng) {
    PolyChain chain;
    chain.k = 2 + int(rng() % 4);
    std::size_t verts = 2 + rng() % 6;
    auto rnd = [&] {
        return Rat(static_cast<long long>(rng() % 801) - 400, 1 + static_cast<long long>(rng() % 32));
    };
    while (chain.vertices.size() < verts) {
        std::vector<Rat> c(chain.k);
        for (auto& x : c) x = rnd();
        PointQ p{std::move(c)};
        if (chain.vertices.empty() || chain.vertices.back() != p)
            chain.vertices.push_back(std::move(p));
    }
    if (rng() % 3 == 0 && chain.vertices.front() != chain.vertices.back()) {
        chain.vertices.push_back(chain.vertices.front());
        chain.closed = true;
    }
    return chain;
}

}  // namespace

TEST_CASE("a thousand random documents round-trip bit-exactly", "[document]") {
    std::mt19937_64 rng(20240615);
    for (int iter = 0; iter < 1000; ++iter) {
        ChainDocument doc;
        int kind = iter % 10;
        if (kind == 0)
            doc = make_document(build_shared_apex_cycle(2 + int(rng() % 4)));
        else if (kind == 1)
            doc = make_document(build_perfect_cycle(2 + int(rng() % 4)));
        else if (kind == 2)
            doc = make_document(build_star_tree(2 + int(rng() % 4)));
        else
            doc = make_document(random_chain(rng));
        std::string text = serialize_document(doc);
        ChainDocument parsed = parse_document(text);
        CHECK(serialize_document(parsed) == text);
        REQUIRE(parsed.is_chain() == doc.is_chain());
        if (doc.is_chain()) {
            CHECK(parsed.chain().vertices == doc.chain().vertices);
            CHECK(parsed.chain().closed == doc.chain().closed);
        } else {
            REQUIRE(parsed.star().segments.size() == doc.star().segments.size());
        }
    }
}

TEST_CASE("document fields use the fixed schema", "[document]") {
    auto doc = make_document(build_shared_apex_cycle(4, Rat(3)));
    Json j = to_json(doc);
    CHECK(j["format_version"] == 1);
    CHECK(j["k"] == 4);
    CHECK(j["closed"] == true);
    CHECK(j["variant"] == "shared-apex");
    CHECK(j["scale"] == "3");
    REQUIRE(j["vertices"].size() == 13);
    CHECK(j["vertices"][0] == Json::array({"1/2", "1/2", "1/2", "3/2"}));
    CHECK(j["vertices"][1] == Json::array({"-1", "-1", "-1", "0"}));
    // field order is part of the format
    auto it = j.begin();
    CHECK(it.key() == "format_version");
    CHECK((++it).key() == "k");
    CHECK((++it).key() == "closed");
    CHECK((++it).key() == "variant");
    CHECK((++it).key() == "scale");
    CHECK((++it).key() == "vertices");

    auto star = make_document(build_star_tree(2));
    Json s = to_json(star);
    CHECK(s["variant"] == "star");
    CHECK(s["segments"].size() == 2);
}

TEST_CASE("parsing validates structure and canonical text", "[document]") {
    std::string good = R"({"format_version":1,"k":2,"closed":false,
                           "vertices":[["0","0"],["1/2","3/2"]]})";
    CHECK_NOTHROW(parse_document(good));

    auto reject = [](const std::string& text) {
        CHECK_THROWS_AS(parse_document(text), DocumentError);
    };
    reject("{");                                                          // not JSON
    reject(R"({"format_version":2,"k":2,"closed":false,"vertices":[["0","0"],["1","1"]]})");
    reject(R"({"format_version":1,"k":2,"closed":false,"vertices":[["0"],["1"]]})");
    reject(R"({"format_version":1,"k":2,"closed":false,"vertices":[["2/4","0"],["1","1"]]})");
    reject(R"({"format_version":1,"k":2,"closed":false,"vertices":[["0/1","0"],["1","1"]]})");
    reject(R"({"format_version":1,"k":2,"closed":false,"vertices":[[0.5,"0"],["1","1"]]})");
    reject(R"({"format_version":1,"k":2,"closed":true,"vertices":[["0","0"],["1","1"]]})");
    reject(R"({"format_version":1,"k":2,"closed":false,"vertices":[["0","0"],["0","0"]]})");
    reject(R"({"format_version":1,"k":2,"variant":"nonsense","closed":false,"vertices":[["0","0"],["1","1"]]})");
}

TEST_CASE("truncated cycles parse but verify as not covering", "[document]") {
    auto full = make_document(build_shared_apex_cycle(3));
    Json j = to_json(full);
    j["vertices"].erase(j["vertices"].size() - 1);
    j["closed"] = false;
    ChainDocument cut = document_from_json(j);
    auto rep = verify_chain(cut.chain(), 3, VerifyMode::full);
    CHECK(rep.classification == Classification::not_covering);
    CHECK(rep.covered < 8);
}

TEST_CASE("CSV lists one vertex per row", "[document]") {
    auto doc = make_document(build_shared_apex_cycle(2));
    std::string csv = to_csv(doc);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
    CHECK(csv.substr(0, csv.find('\n')) == "1/2,3/2");

    auto star = make_document(build_star_tree(3));
    std::string star_csv = to_csv(star);
    CHECK(std::count(star_csv.begin(), star_csv.end(), '\n') == 8);
}

TEST_CASE("SVG output is a pure function of the document", "[document]") {
    auto doc = make_document(build_shared_apex_cycle(2));
    std::string one = to_svg(doc, 0, 1);
    std::string two = to_svg(doc, 0, 1);
    CHECK(one == two);
    CHECK(std::count(one.begin(), one.end(), '\n') > 4);

    std::size_t circles = 0;
    for (std::size_t pos = one.find("<circle"); pos != std::string::npos;
         pos = one.find("<circle", pos + 1))
        ++circles;
    CHECK(circles == 4);
    CHECK(one.find("<polyline") != std::string::npos);

    CHECK_THROWS_AS(to_svg(doc, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(to_svg(doc, 0, 5), std::invalid_argument);
}

TEST_CASE("verification reports serialize deterministically", "[document]") {
    auto rep = verify_chain(build_perfect_cycle(3), 3, VerifyMode::full);
    Json j = report_to_json(rep, VerifyMode::full);
    CHECK(j["type"] == "verification");
    CHECK(j["k"] == 3);
    CHECK(j["link_length"] == 6);
    CHECK(j["covered"] == 8);
    CHECK(j["classification"] == "perfect_covering_cycle");
    CHECK(j["optimal"] == true);
    CHECK(j["uncovered"].empty());
    CHECK(j["node_multiplicity_histogram"] == Json::array({Json::array({1, 8})}));
    CHECK(j["max_vertex_link_multiplicity"] == 2);
    CHECK(report_to_json(rep, VerifyMode::full).dump() == j.dump());
}

TEST_CASE("oracle outcomes serialize with their statistics", "[document]") {
    OracleOutcome out = four_node_limit_sample(3, 100, 42, Rat(3));
    Json j = oracle_to_json(out, 3, "random", 42, Rat(3));
    CHECK(j["type"] == "oracle");
    CHECK(j["mode"] == "random");
    CHECK(j["holds"] == true);
    CHECK(j["samples"] == 100);
    CHECK(j["seed"] == 42);
    CHECK(j["box"] == "3");
    CHECK(j["counterexamples"].empty());
}
