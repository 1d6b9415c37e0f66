#include <catch2/catch_amalgamated.hpp>

#include "snarklab/cycle_cover.hpp"
#include "oracles.hpp"

using namespace snarklab;

namespace {

// Connected 2-regular edge sets, by enumerating every edge subset.
int circuits_by_subsets(const CubicGraph& g) {
    const int m = g.size();
    int count = 0;
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
        vector<int> deg(g.order(), 0);
        std::uint32_t verts = 0;
        for (int e = 0; e < m; ++e)
            if (s >> e & 1) {
                auto [a, b] = g.ends(e);
                ++deg[a];
                ++deg[b];
                verts |= (1u << a) | (1u << b);
            }
        bool two = true;
        for (int d : deg) two = two && (d == 0 || d == 2);
        if (!two) continue;
        // connected through chosen edges
        int start = __builtin_ctz(verts);
        std::uint32_t seen = 1u << start, frontier = seen;
        while (frontier) {
            std::uint32_t next = 0;
            for (int e = 0; e < m; ++e) {
                if (!(s >> e & 1)) continue;
                auto [a, b] = g.ends(e);
                if ((frontier >> a & 1) && !(seen >> b & 1)) next |= 1u << b;
                if ((frontier >> b & 1) && !(seen >> a & 1)) next |= 1u << a;
            }
            seen |= next;
            frontier = next;
        }
        count += seen == verts;
    }
    return count;
}

RecipeOp k4_edge(int element) {
    RecipeOp op;
    op.kind = OpKind::O1;
    op.element = element;
    op.piece_name = "K4";
    op.piece = k4();
    op.piece_element = 0;
    op.gluing = {0, 1};
    return op;
}

}  // namespace

TEST_CASE("circuit enumeration") {
    for (auto& g : {k4(), k33(), prism(), cube(), petersen()})
        CHECK(static_cast<int>(circuits(g).size()) == circuits_by_subsets(g));
    CHECK(circuits(k4()).size() == 7);
}

TEST_CASE("exact scc agrees with the shortest-path oracle") {
    vector<CubicGraph> gs{k4(), k33(), prism(), cube(), petersen(), oracle::pentagonal_prism(),
                          oracle::k4_sum2_k4(), inflate_vertex(petersen(), 0).graph};
    for (auto& g : gs) {
        CycleCover best;
        int v = exact_scc(g, 14, &best);
        CHECK(v == oracle::exact_scc(g));
        CHECK(best.length() == v);
        CHECK(verify_cover(g, best).length == v);
    }
    CHECK(exact_scc(petersen()) == 21);
    try {
        exact_scc(flower_snark(5));
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TooLarge);
    }
}

TEST_CASE("verify_cover rejects bad covers") {
    auto g = k4();
    CycleCover c;
    c.cycles.push_back(list_to_mask({0, 1, 2}));  // triangle 012
    try {
        verify_cover(g, c);
        FAIL("expected Uncovered");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Uncovered);
    }
    c.cycles.push_back(list_to_mask({3}));
    try {
        verify_cover(g, c);
        FAIL("expected NotACycle");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotACycle);
    }
}

TEST_CASE("covers from colourings and 4-covers have length 4m/3") {
    for (auto& g : {k4(), cube(), oracle::k4_sum2_k4()}) {
        auto c = cover_from_colouring(g, *three_edge_colour(g));
        auto rep = verify_cover(g, c);
        CHECK(rep.length * 3 == 4 * g.size());
        CHECK(rep.four_thirds);
    }
    for (int v = 0; v < 10; ++v) {
        auto g = inflate_vertex(petersen(), v).graph;
        auto p = find_4cover(g);
        REQUIRE(p);
        auto c = cover_from_4cover(g, *p);
        CHECK(verify_cover(g, c).length == 24);
        CHECK(c.cycles.size() == 4);
    }
    try {
        cover_from_4cover(petersen(), PMCover{});
        FAIL("expected NotFourCover");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFourCover);
    }
}

TEST_CASE("Petersen covers of length 21") {
    auto b = petersen_with_core();
    auto c = petersen_cover(b.graph, b.v0);
    auto rep = verify_cover(b.graph, c);
    CHECK(rep.length == 21);
    CHECK(rep.plus_one);
    CHECK(rep.heavy_vertex == b.v0);
    auto hp = cover_via_heavy_pentagon(petersen());
    REQUIRE(hp);
    CHECK(verify_cover(petersen(), *hp).length == 21);
}

TEST_CASE("recipe covers are optimal where exact search reaches") {
    for (int e : {6, 9, 12, 14}) {
        Recipe r{{k4_edge(e)}};
        auto b = apply_recipe(r);
        REQUIRE(b.graph.order() <= 14);
        auto c = cover_for_recipe(b.graph, r);
        auto rep = verify_cover(b.graph, c);
        CHECK(rep.length * 3 == 4 * b.graph.size() + 3);
        CHECK(rep.plus_one);
        CHECK(exact_scc(b.graph) == rep.length);
        CHECK(oracle::exact_scc(b.graph) == rep.length);
    }
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto r = random_recipe(seed, 1 + static_cast<int>(seed % 4), default_pool());
        auto b = apply_recipe(r);
        auto rep = verify_cover(b.graph, cover_for_recipe(b.graph, r));
        CHECK(rep.length * 3 == 4 * b.graph.size() + 3);
        CHECK(rep.heavy_vertex == b.v0);
    }
    Recipe r{{k4_edge(6)}};
    try {
        cover_for_recipe(petersen(), r);
        FAIL("expected RecipeMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RecipeMismatch);
    }
}

TEST_CASE("cover JSON round trip") {
    auto p = petersen();
    auto c = *cover_via_heavy_pentagon(p);
    auto back = cover_from_json(nlohmann::json::parse(to_json(p, c).dump()));
    CHECK(verify_cover(p, back).length == 21);
    try {
        cover_from_json(nlohmann::json{{"cycles", "x"}});
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
    }
}
