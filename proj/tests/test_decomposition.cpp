#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "snarklab/decomposition.hpp"
#include "snarklab/iso.hpp"
#include "snarklab/named.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace snarklab;

namespace {

std::set<vector<int>> library_cuts(const CubicGraph& g) {
    std::set<vector<int>> out;
    for (auto& c : small_independent_cuts(g)) {
        auto e = c.edges;
        std::sort(e.begin(), e.end());
        out.insert(e);
    }
    return out;
}

}  // namespace

TEST_CASE("2-sum of two K4 is the 8-vertex graph") {
    SumSpec s{SumKind::sum2, 0, 0, {0, 1}};
    auto r = sum2(k4(), k4(), s);
    CHECK(r.graph.order() == 8);
    CHECK(r.graph.size() == 12);
    CHECK(r.cut.size() == 2);
    CHECK(isomorphic(r.graph, oracle::k4_sum2_k4()));
    CHECK(is_two_connected(r.graph));
    SumSpec bad{SumKind::sum2, 0, 0, {0, 0}};
    try {
        sum2(k4(), k4(), bad);
        FAIL("expected BadSpec");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadSpec);
    }
    CHECK_THROWS_AS(sum2(k4(), k4(), SumSpec{SumKind::sum2, 6, 0, {0, 1}}), Error);
}

TEST_CASE("3-sum sizes and principal cut") {
    SumSpec s{SumKind::sum3, 0, 0, {2, 0, 1}};
    auto r = sum3(petersen(), k33(), s);
    CHECK(r.graph.order() == 10 + 6 - 2);
    CHECK(r.graph.size() == 15 + 9 - 3);
    CHECK(r.cut.size() == 3);
    CHECK(pairwise_independent(r.graph, r.cut));
    CHECK(r.proper);
    CHECK_FALSE(is_colourable(r.graph));
    // K4 3-summed into any vertex replaces it by a triangle
    auto t = sum3(petersen(), k4(), SumSpec{SumKind::sum3, 5, 0, {0, 1, 2}}).graph;
    CHECK(isomorphic(t, inflate_vertex(petersen(), 5).graph));
}

TEST_CASE("small independent cuts agree with subset scan") {
    vector<CubicGraph> gs{petersen(), oracle::k4_sum2_k4(), prism(), oracle::pentagonal_prism(), cube(), k33()};
    for (int s = 0; s < 6; ++s) {
        auto c = fixture::composite(100 + s, 2);
        if (c.graph.order() <= 20) gs.push_back(c.graph);
    }
    for (auto& g : gs) {
        auto want = oracle::independent_cuts_by_subsets(g);
        CHECK(library_cuts(g) == std::set<vector<int>>(want.begin(), want.end()));
        CHECK(cyclically_4_edge_connected(g) == want.empty());
    }
}

TEST_CASE("splitting along a cut inverts the sum") {
    for (int s = 0; s < 12; ++s) {
        auto c = fixture::composite(s, 1 + s % 3);
        auto cuts = small_independent_cuts(c.graph);
        REQUIRE_FALSE(cuts.empty());
        for (auto& cut : cuts) {
            auto sp = decompose_along(c.graph, cut.edges);
            CHECK(sp.left.order() + sp.right.order() ==
                  c.graph.order() + (cut.edges.size() == 3 ? 2 : 0));
            auto back = apply_sum(sp.left, sp.right, sp.spec);
            CHECK(isomorphic(back.graph, c.graph));
        }
    }
    auto p = petersen();
    try {
        decompose_along(p, {0, 3});
        FAIL("expected CutNotSmallIndependent");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CutNotSmallIndependent);
    }
}

TEST_CASE("canonical decomposition recovers the pieces for every seed") {
    std::mt19937 rng(1);
    for (int s = 0; s < 8; ++s) {
        auto c = fixture::composite(1000 + s, 1 + s % 4);
        for (std::uint64_t seed = 0; seed < 6; ++seed) {
            auto g = seed % 2 ? oracle::relabel(c.graph, rng) : c.graph;
            auto t = canonical_decomposition(g, seed);
            auto fs = t.factor_graphs();
            for (auto& f : fs) CHECK(cyclically_4_edge_connected(f));
            CHECK(same_multiset(fs, c.pieces));
            CHECK(isomorphic(reassemble(t).graph, g));
            CHECK(vertex_partition_ok(t));
        }
    }
}

TEST_CASE("K4 2-sum K4 always splits into two K4") {
    for (int ea = 0; ea < 6; ++ea)
        for (std::uint64_t seed = 0; seed < 4; ++seed) {
            auto t = canonical_decomposition(oracle::k4_sum2_k4(ea, (ea + 3) % 6), seed);
            CHECK(same_multiset(t.factor_graphs(), {k4(), k4()}));
        }
}

TEST_CASE("decomposition rejects bridged input") {
    CubicGraph b(2, {{0, 0}, {0, 1}, {1, 1}});
    try {
        canonical_decomposition(b);
        FAIL("expected NotTwoConnected");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotTwoConnected);
    }
}

TEST_CASE("defect-three refinement keeps a Petersen host") {
    auto base = sum2(petersen(), k4(), SumSpec{SumKind::sum2, 12, 2, {1, 0}}).graph;
    auto g = sum3(base, k33(), SumSpec{SumKind::sum3, 9, 4, {0, 2, 1}}).graph;
    auto t = defect3_decomposition(g);
    REQUIRE(t.host >= 0);
    CHECK(isomorphic(t.nodes[t.host].graph, petersen()));
    CHECK(all_pass(t.audit));
    CHECK(t.host_hexagon.size() == 6);
    for (int f : t.factors())
        if (f != t.host) CHECK(is_colourable(t.nodes[f].graph));
    CHECK(isomorphic(reassemble(t).graph, g));
    CHECK_THROWS_AS(defect3_decomposition(k33()), Error);
}

TEST_CASE("decomposition JSON round trip") {
    auto c = fixture::composite(77, 3);
    auto t = canonical_decomposition(c.graph, 5);
    auto j = to_json(t);
    auto back = decomposition_from_json(nlohmann::json::parse(j.dump()));
    REQUIRE(back.nodes.size() == t.nodes.size());
    CHECK(isomorphic(reassemble(back).graph, c.graph));
    CHECK(same_multiset(back.factor_graphs(), t.factor_graphs()));
    auto broken = j;
    broken["nodes"][0].erase("graph");
    try {
        decomposition_from_json(broken);
        FAIL("expected SchemaError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SchemaError);
    }
    auto s = sum_spec_from_json(to_json(SumSpec{SumKind::sum3, 4, 1, {2, 1, 0}}));
    CHECK(s.kind == SumKind::sum3);
    CHECK(s.gluing == vector<int>{2, 1, 0});
}
