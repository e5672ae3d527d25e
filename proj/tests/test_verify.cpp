#include <catch2/catch_amalgamated.hpp>

#include "cubecover/construct.hpp"
#include "cubecover/verify.hpp"

using namespace cubecover;

namespace {

PointQ pt(std::initializer_list<Rat> c) { return PointQ(c); }

// Open chain left after deleting link i from a closed cycle (re-rooted at the
// vertex after the gap).
PolyChain without_link(const PolyChain& cycle, std::size_t gone) {
    PolyChain open;
    open.k = cycle.k;
    open.closed = false;
    std::size_t links = cycle.link_count();
    for (std::size_t step = 0; step <= links - 1; ++step) {
        std::size_t idx = (gone + 1 + step) % links;
        open.vertices.push_back(cycle.vertices[idx]);
    }
    return open;
}

bool reports_equal(const VerificationReport& a, const VerificationReport& b) {
    return a.k == b.k && a.link_length == b.link_length && a.covered == b.covered &&
           a.uncovered == b.uncovered && a.node_link_multiplicity == b.node_link_multiplicity &&
           a.vertex_link_multiplicity == b.vertex_link_multiplicity &&
           a.classification == b.classification && a.optimal == b.optimal;
}

}  // namespace

TEST_CASE("lower bound is 3*2^(k-2)", "[verify]") {
    CHECK(lower_bound(2) == 3);
    CHECK(lower_bound(3) == 6);
    CHECK(lower_bound(4) == 12);
    CHECK(lower_bound(12) == 3072);
    CHECK_THROWS_AS(lower_bound(1), std::invalid_argument);
}

TEST_CASE("shared-apex cycle verifies as an optimal covering cycle", "[verify]") {
    auto rep = verify_chain(build_shared_apex_cycle(3, Rat(3)), 3, VerifyMode::full);
    CHECK(rep.link_length == 6);
    CHECK(rep.covered == 8);
    CHECK(rep.uncovered.empty());
    CHECK(rep.classification == Classification::covering_cycle);
    CHECK(rep.optimal);
    // The apex is shared by both triangles: two links per triangle touch it.
    CHECK(rep.max_vertex_links() == 4);
}

TEST_CASE("perfect cycle verifies as perfect", "[verify]") {
    auto rep = verify_chain(build_perfect_cycle(3, {Rat(2), Rat(5, 2)}), 3, VerifyMode::full);
    CHECK(rep.link_length == 6);
    CHECK(rep.covered == 8);
    CHECK(rep.classification == Classification::perfect_covering_cycle);
    CHECK(rep.optimal);
    CHECK(rep.max_vertex_links() == 2);
}

TEST_CASE("k=2 shared apex is already perfect", "[verify]") {
    auto rep = verify_chain(build_shared_apex_cycle(2), 2, VerifyMode::full);
    CHECK(rep.classification == Classification::perfect_covering_cycle);
    CHECK(rep.optimal);
}

TEST_CASE("a single diagonal covers half the square", "[verify]") {
    PolyChain diag;
    diag.k = 2;
    diag.vertices = {pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(1)})};
    auto rep = verify_chain(diag, 2, VerifyMode::full);
    CHECK(rep.link_length == 1);
    CHECK(rep.covered == 2);
    REQUIRE(rep.uncovered.size() == 2);
    CHECK(node_point(2, rep.uncovered[0]) == pt({Rat(1), Rat(0)}));
    CHECK(node_point(2, rep.uncovered[1]) == pt({Rat(0), Rat(1)}));
    CHECK(rep.classification == Classification::not_covering);
    CHECK_FALSE(rep.optimal);
}

TEST_CASE("count_nodes_on_chain counts distinct nodes only", "[verify]") {
    PolyChain triangle = build_shared_apex_cycle(2, Rat(3));
    CHECK(count_nodes_on_chain(triangle, 2) == 4);

    PolyChain two_links;
    two_links.k = 3;
    two_links.vertices = {pt({Rat(1, 2), Rat(1, 2), Rat(3, 2)}), pt({Rat(-1), Rat(-1), Rat(0)}),
                          pt({Rat(2), Rat(2), Rat(0)})};
    // The first two links of a scale-3 triangle meet (0,0,1), (0,0,0), (1,1,0);
    // the fourth node of the plane needs the missing third link.
    CHECK(count_nodes_on_chain(two_links, 3) == 3);

    PolyChain far_away;
    far_away.k = 2;
    far_away.vertices = {pt({Rat(5), Rat(5)}), pt({Rat(6), Rat(6)})};
    CHECK(count_nodes_on_chain(far_away, 2) == 0);
}

TEST_CASE("fast and full reports agree on builder outputs", "[verify]") {
    for (int k = 2; k <= 10; ++k) {
        for (int which = 0; which < 2; ++which) {
            PolyChain chain = which ? build_perfect_cycle(k) : build_shared_apex_cycle(k);
            auto fast = verify_chain(chain, k, VerifyMode::fast);
            auto full = verify_chain(chain, k, VerifyMode::full);
            CHECK(reports_equal(fast, full));
        }
    }
}

TEST_CASE("fast mode without metadata falls back to the full scan", "[verify]") {
    PolyChain diag;
    diag.k = 2;
    diag.vertices = {pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(1)})};
    auto fast = verify_chain(diag, 2, VerifyMode::fast);
    auto full = verify_chain(diag, 2, VerifyMode::full);
    CHECK(reports_equal(fast, full));
}

TEST_CASE("no link of an optimal cycle is redundant", "[verify]") {
    for (int k = 2; k <= 6; ++k) {
        PolyChain cycle = build_perfect_cycle(k);
        for (std::size_t gone = 0; gone < cycle.link_count(); ++gone) {
            PolyChain open = without_link(cycle, gone);
            CHECK(count_nodes_on_chain(open, k) < node_count(k));
        }
    }
}

TEST_CASE("published introductory chains verify as optimal covering cycles", "[verify]") {
    PolyChain h22;
    h22.k = 2;
    h22.closed = true;
    h22.vertices = {pt({Rat(1, 2), Rat(3, 2)}), pt({Rat(2), Rat(0)}), pt({Rat(-1), Rat(0)}),
                    pt({Rat(1, 2), Rat(3, 2)})};
    auto rep22 = verify_chain(h22, 2, VerifyMode::full);
    CHECK(rep22.optimal);
    CHECK(rep22.classification >= Classification::covering_cycle);

    PolyChain h23;
    h23.k = 3;
    h23.closed = true;
    PointQ apex = pt({Rat(1, 2), Rat(1, 2), Rat(3, 2)});
    h23.vertices = {apex,
                    pt({Rat(2), Rat(2), Rat(0)}),
                    pt({Rat(-1), Rat(-1), Rat(0)}),
                    apex,
                    pt({Rat(2), Rat(-1), Rat(0)}),
                    pt({Rat(-1), Rat(2), Rat(0)}),
                    apex};
    auto rep23 = verify_chain(h23, 3, VerifyMode::full);
    CHECK(rep23.optimal);
    CHECK(rep23.classification == Classification::covering_cycle);
}

TEST_CASE("a node sitting on a chain joint breaks path-ness", "[verify]") {
    // Two links meeting exactly at node (1,1): the node belongs to both.
    PolyChain bent;
    bent.k = 2;
    bent.vertices = {pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(1)}), pt({Rat(1), Rat(0)}),
                     pt({Rat(0), Rat(1)})};
    auto rep = verify_chain(bent, 2, VerifyMode::full);
    CHECK(rep.covered == 4);
    CHECK(rep.node_link_multiplicity[3] == 2);  // node (1,1)
    CHECK(rep.classification == Classification::covering_trail);
}

TEST_CASE("dimension mismatch is rejected", "[verify]") {
    PolyChain diag;
    diag.k = 2;
    diag.vertices = {pt({Rat(0), Rat(0)}), pt({Rat(1), Rat(1)})};
    CHECK_THROWS_AS(verify_chain(diag, 3, VerifyMode::full), std::invalid_argument);
}
