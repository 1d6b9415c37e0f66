#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "snarklab/decomposition.hpp"
#include "snarklab/named.hpp"
#include "oracles.hpp"

using namespace snarklab;

namespace {

CubicGraph pg_sum2_pg() {
    SumSpec s{SumKind::sum2, 0, 0, {0, 1}};
    return sum2(petersen(), petersen(), s).graph;
}

// Every 6-cycle that is the core of some 3-array, as a sorted edge list.
std::set<vector<int>> hexagonal_cores_by_triples(const CubicGraph& g) {
    auto pms = oracle::perfect_matchings(g);
    std::set<vector<int>> out;
    const int k = static_cast<int>(pms.size());
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            for (int l = j; l < k; ++l) {
                vector<int> mult(g.size(), 0);
                for (int e : pms[i]) ++mult[e];
                for (int e : pms[j]) ++mult[e];
                for (int e : pms[l]) ++mult[e];
                vector<int> core;
                int unc = 0;
                for (int e = 0; e < g.size(); ++e) {
                    if (mult[e] != 1) core.push_back(e);
                    unc += mult[e] == 0;
                }
                if (unc != 3 || core.size() != 6) continue;
                // six vertices of degree two, connected, and no chord
                vector<int> deg(g.order(), 0);
                vector<char> in(g.order(), 0);
                for (int e : core) {
                    ++deg[g.ends(e)[0]];
                    ++deg[g.ends(e)[1]];
                }
                int verts = 0;
                bool ok = true;
                for (int v = 0; v < g.order(); ++v) {
                    if (deg[v]) ++verts, in[v] = 1;
                    ok = ok && (deg[v] == 0 || deg[v] == 2);
                }
                std::uint32_t mask = 0;
                for (int v = 0; v < g.order(); ++v)
                    if (in[v]) mask |= 1u << v;
                int chords = 0;
                for (int e = 0; e < g.size(); ++e)
                    if (in[g.ends(e)[0]] && in[g.ends(e)[1]] && mult[e] == 1) ++chords;
                if (ok && verts == 6 && chords == 0 && oracle::connected_subset(g, mask)) out.insert(core);
            }
    return out;
}

}  // namespace

TEST_CASE("defect matches the triple enumeration") {
    vector<CubicGraph> gs{k4(), cube(), petersen(), inflate_vertex(petersen(), 0).graph, pg_sum2_pg(),
                          flower_snark(5), oracle::k4_sum2_k4()};
    for (auto& g : gs) {
        int want = oracle::colouring_defect(g);
        auto fast = colouring_defect(g);
        auto slow = colouring_defect(g, DefectOptions{false, -1});
        CHECK(fast.defect == want);
        CHECK(slow.defect == want);
        for (auto& m : fast.witness.m) CHECK(is_perfect_matching(g, m));
        CHECK(static_cast<int>(fast.core.uncovered.size()) == want);
    }
}

TEST_CASE("Petersen has defect three with a chordless hexagonal core") {
    auto p = petersen();
    auto c = colouring_defect(p);
    CHECK(c.defect == 3);
    CHECK(c.hexagonal);
    REQUIRE(c.hexagon.size() == 6);
    CHECK(is_induced_cycle(p, c.hexagon));
    CHECK(c.core.doubly.size() == 3);
    CHECK(c.core.triply.empty());
    CHECK(has_defect_three(p));
    CHECK_FALSE(has_defect_three(k4()));
}

TEST_CASE("hexagonal cores agree with the triple enumeration") {
    for (auto& g : {petersen(), inflate_vertex(petersen(), 3).graph, pg_sum2_pg()}) {
        auto want = hexagonal_cores_by_triples(g);
        std::set<vector<int>> got;
        for (auto& w : hexagonal_cores(g)) {
            auto es = w.cycle_edges;
            std::sort(es.begin(), es.end());
            got.insert(es);
            auto a = array_from_hexagonal_witness(g, w);
            auto cert = make_certificate(g, a);
            CHECK(cert.defect == 3);
            CHECK(cert.hexagonal);
        }
        CHECK(got == want);
    }
    CHECK(hexagonal_cores(petersen()).size() == 10);
}

TEST_CASE("verify_hexagonal_core rejects non-cores") {
    auto p = petersen();
    CHECK(verify_hexagonal_core(p, {0, 1, 2, 3, 4, 5}));
    CHECK_THROWS_AS(verify_hexagonal_core(p, {0, 1, 2, 3, 4}), Error);
    // the prism has induced 6-cycles but is colourable, so no colouring of the rest has the required pattern
    auto pr = oracle::pentagonal_prism();
    for (auto& c : induced_cycles_of_length(pr, 6)) CHECK_FALSE(verify_hexagonal_core(pr, c.vertices));
}

TEST_CASE("Fano flows conserve for every array examined") {
    for (auto& g : {petersen(), flower_snark(5), cube(), inflate_vertex(petersen(), 2).graph}) {
        auto pms = perfect_matchings(g);
        int checked = 0;
        for (size_t i = 0; i < pms.size() && checked < 300; ++i)
            for (size_t j = i; j < pms.size() && checked < 300; j += 3)
                for (size_t l = j; l < pms.size() && checked < 300; l += 5, ++checked) {
                    ThreeArray a{{pms[i], pms[j], pms[l]}};
                    auto f = fano_colouring(g, a);
                    CHECK(f.kirchhoff);
                    for (int v = 0; v < g.order(); ++v) {
                        int s = 0;
                        for (int e : g.incident(v)) s ^= f.point[e];
                        CHECK(s == 0);
                    }
                }
    }
}

TEST_CASE("core position audit passes on defect three graphs") {
    for (auto& g : {petersen(), inflate_vertex(petersen(), 0).graph, flower_snark(5)}) {
        auto c = colouring_defect(g);
        REQUIRE(c.hexagonal);
        CHECK(all_pass(core_position_audit(g, c)));
    }
}

TEST_CASE("inflated Petersen triangles are not essential") {
    auto g = inflate_vertex(petersen(), 4).graph;
    auto ess = essential_triangles(g);
    CHECK(ess.empty());
    auto t = triangles(g);
    REQUIRE(t.size() == 1);
    CHECK(contracted_defect(g, t[0]).defect_contracted == oracle::colouring_defect(petersen()));
    CHECK_THROWS_AS(essential_triangles(k4()), Error);
}

TEST_CASE("bridged graphs are rejected") {
    CubicGraph b(2, {{0, 0}, {0, 1}, {1, 1}});
    try {
        colouring_defect(b);
        FAIL("expected Bridged");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Bridged);
    }
}
