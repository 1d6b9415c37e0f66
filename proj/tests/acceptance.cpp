// Acceptance harness: one PASS/FAIL line per criterion.
// Usage: acceptance <corpus.g6>

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>

#include "snarklab/certificate.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace snarklab;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) notes << "first failure: " << what;
            ok = false;
        }
    }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Z2^3 flow check done by hand rather than through the library's flag.
bool fano_conserves(const CubicGraph& g, const ThreeArray& a, int& arrays) {
    ++arrays;
    auto f = fano_colouring(g, a);
    if (!f.kirchhoff) return false;
    for (int v = 0; v < g.order(); ++v) {
        int s = 0;
        for (int e : g.incident(v)) s ^= f.point[e];
        if (s) return false;
    }
    return true;
}

int fano_arrays = 0;
bool fano_ok = true;

void note_array(const CubicGraph& g, const ThreeArray& a) { fano_ok = fano_conserves(g, a, fano_arrays) && fano_ok; }

int four_covers_audited = 0;
bool four_cover_audits_ok = true;

void note_4cover(const CubicGraph& g, const PMCover& c) {
    ++four_covers_audited;
    four_cover_audits_ok = all_pass(cut_parity_audit(g, c)) && four_cover_audits_ok;
}

struct ExactPair {
    CubicGraph graph;
    int constructed;
};
vector<ExactPair> exact_pairs;

void note_cover(const CubicGraph& g, const CycleCover& c) {
    if (g.order() <= 14) exact_pairs.push_back({g, c.length()});
}

bool petersen_baseline() {
    auto t0 = Clock::now();
    Check c;
    auto p = petersen();
    auto d = colouring_defect(p);
    note_array(p, d.witness);
    c.require(d.defect == 3, "defect is 3");
    c.require(d.hexagonal && is_induced_cycle(p, d.hexagon), "core is a chordless hexagon");
    auto pi = perfect_matching_index(p);
    c.require(pi.value == 5 && pi.four.exhausted, "4-cover search exhausts");
    c.require(pi.cover && pi.cover->matchings.size() == 5 && verify_pm_cover(p, *pi.cover), "5-cover verified");
    auto b = petersen_with_core();
    auto cover = petersen_cover(b.graph, b.v0);
    auto rep = verify_cover(b.graph, cover);
    note_cover(b.graph, cover);
    c.require(rep.length == 21 && rep.plus_one, "cover of length 21");
    c.require(rep.length * 5 == rep.m * 7, "ratio 7/5");
    double secs = since(t0);
    c.require(secs < 5, "runtime under 5 s");
    std::cout << (c.ok ? "PASS" : "FAIL") << " 1 Petersen baseline: df=" << d.defect << " pi=" << pi.value
              << " scc cover=" << rep.length << "/" << rep.m << " (" << secs << " s) " << c.notes.str() << "\n";
    return c.ok;
}

bool inflation() {
    auto t0 = Clock::now();
    Check c;
    auto p = petersen();
    for (int v = 0; v < p.order(); ++v) {
        auto inf = inflate_vertex(p, v);
        const auto& g = inf.graph;
        bool meets = false;
        for (auto& w : hexagonal_cores(g)) {
            note_array(g, array_from_hexagonal_witness(g, w));
            for (int e : w.cycle_edges)
                for (int t : inf.triangle_edges) meets = meets || e == t;
        }
        c.require(meets, "hexagonal core meets the triangle at v=" + std::to_string(v));
        auto pi = perfect_matching_index(g);
        c.require(pi.value == 4, "pi=4 at v=" + std::to_string(v));
        if (pi.value != 4) continue;
        note_4cover(g, *pi.cover);
        auto cover = cover_from_4cover(g, *pi.cover);
        auto rep = verify_cover(g, cover);
        note_cover(g, cover);
        c.require(rep.length == 24 && rep.length * 3 == 4 * rep.m, "cover of length 24 at v=" + std::to_string(v));
    }
    double secs = since(t0);
    c.require(secs < 30, "runtime under 30 s");
    std::cout << (c.ok ? "PASS" : "FAIL") << " 2 inflation on all 10 Petersen vertices (" << secs << " s) "
              << c.notes.str() << "\n";
    return c.ok;
}

vector<std::pair<Recipe, BuildResult>> generated;

bool generator_soundness() {
    auto t0 = Clock::now();
    Check c;
    const int count = 30;
    int max_order = 0;
    for (int i = 0; i < count; ++i) {
        auto r = random_recipe(7000 + i, 1 + i % 4, default_pool());
        auto b = apply_recipe(r);
        const auto& g = b.graph;
        max_order = std::max(max_order, g.order());
        std::string tag = " (recipe " + std::to_string(i) + ")";
        note_array(g, b.array);
        c.require(construction_detail::array_has_core(g, b.array, b.cycle), "carried array has core C" + tag);
        c.require(make_certificate(g, b.array).defect == 3 && !is_colourable(g), "defect 3" + tag);
        auto pi = perfect_matching_index(g);
        c.require(pi.value == 5 && pi.four.exhausted, "pi=5" + tag);
        auto cover = cover_for_recipe(g, r);
        auto rep = verify_cover(g, cover);
        note_cover(g, cover);
        c.require(rep.plus_one && rep.length * 3 == 4 * rep.m + 3, "cover length 4m/3+1" + tag);
        c.require(rep.heavy_vertex == b.v0, "weight profile centred at v0" + tag);
        generated.push_back({r, b});
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " 3 generator soundness: " << count << " recipes, up to " << max_order
              << " vertices (" << since(t0) << " s) " << c.notes.str() << "\n";
    return c.ok;
}

bool characterization() {
    auto t0 = Clock::now();
    Check c;
    int o2 = 0;
    for (size_t i = 0; i < generated.size(); ++i) {
        auto& [r, b] = generated[i];
        std::string tag = " (recipe " + std::to_string(i) + ")";
        auto rep = char_audit_pi5(b.graph);
        c.require(isomorphic(rep.tree.nodes[rep.tree.host].graph, petersen()).has_value(), "host is Petersen" + tag);
        c.require(all_pass(rep.clauses), "audit clauses" + tag);
        c.require(recipe_matches(rep.recipe, r), "recovered pieces match" + tag);
        for (auto& op : rep.recipe) {
            if (op.kind != OpKind::O2) continue;
            ++o2;
            c.require(op.witness && verify_quasi_bipartite(op.piece, *op.witness, op.piece_element),
                      "O2 piece re-verifies quasi-bipartite" + tag);
        }
    }
    c.require(!generated.empty(), "generated graphs available");
    std::cout << (c.ok ? "PASS" : "FAIL") << " 4 characterization round trip on " << generated.size() << " graphs, "
              << o2 << " substitutions (" << since(t0) << " s) " << c.notes.str() << "\n";
    return c.ok;
}

bool decomposition_uniqueness() {
    auto t0 = Clock::now();
    Check c;
    std::mt19937 rng(11);
    for (int i = 0; i < 10; ++i) {
        auto comp = fixture::composite(9000 + i, 2 + i % 3);
        vector<CubicGraph> first;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            auto g = oracle::relabel(comp.graph, rng);
            auto t = canonical_decomposition(g, seed);
            auto fs = t.factor_graphs();
            if (seed == 0) first = fs;
            std::string tag = " (composite " + std::to_string(i) + ", seed " + std::to_string(seed) + ")";
            c.require(same_multiset(fs, first), "factor multiset invariant" + tag);
            c.require(same_multiset(fs, comp.pieces), "factors are the pieces" + tag);
            c.require(isomorphic(reassemble(t).graph, g).has_value(), "reassembly" + tag);
        }
    }
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto t = canonical_decomposition(oracle::relabel(oracle::k4_sum2_k4(), rng), seed);
        c.require(same_multiset(t.factor_graphs(), {k4(), k4()}), "K4 2-sum K4 gives two K4");
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << " 5 canonical decomposition uniqueness, 10 composites x 10 seeds ("
              << since(t0) << " s) " << c.notes.str() << "\n";
    return c.ok;
}

bool colour_type_tables() {
    Check c;
    auto f = hexagon_triangle_fragment();
    std::set<std::string> col;
    for (auto& t : pole_colour_types(f.pole, f.dangling))
        if (full_palette(t)) col.insert(t);
    const std::set<std::string> six{"121233", "122133", "123123", "123213", "123312", "123321"};
    const std::set<std::string> table{"112233", "112323", "112332", "121323", "121332",
                                      "122313", "122331", "123132", "123231"};
    std::set<std::string> rest;
    for (auto& t : all_full_palette_types())
        if (!col.count(t)) rest.insert(t);
    c.require(col == six, "six admissible types");
    c.require(rest == table, "complementary nine");
    std::cout << (c.ok ? "PASS" : "FAIL") << " 6 colour types: " << col.size() << " admissible, " << rest.size()
              << " complementary " << c.notes.str() << "\n";
    return c.ok;
}

// Non-bipartite but bipartite after removing two edges: switch two edges of a bipartite graph.
std::optional<CubicGraph> almost_bipartite_sample(std::uint64_t seed) {
    auto g = random_bipartite_cubic(5 + static_cast<int>(seed % 4), seed);
    auto es = g.edges();
    std::mt19937_64 rng(seed);
    for (int tries = 0; tries < 50; ++tries) {
        int i = static_cast<int>(rng() % es.size()), j = static_cast<int>(rng() % es.size());
        auto [a1, b1] = es[i];
        auto [a2, b2] = es[j];
        if (i == j || a1 == a2 || b1 == b2) continue;
        auto h = es;
        h[i] = {a1, a2};
        h[j] = {b1, b2};
        CubicGraph out(g.order(), h);
        bool simple = true;
        for (int e = 0; e < out.size(); ++e)
            if (out.multiplicity(out.ends(e)[0], out.ends(e)[1]) > 1) simple = false;
        if (simple && is_two_connected(out)) return out;
    }
    return std::nullopt;
}

bool property_suites() {
    auto t0 = Clock::now();
    Check c;
    std::mt19937_64 rng(2024);

    // parity lemma
    vector<CubicGraph> colourable{k4(), k33(), prism(), cube(), oracle::pentagonal_prism(), oracle::k4_sum2_k4()};
    for (int i = 0; i < 6; ++i) colourable.push_back(random_bipartite_cubic(4 + i, 50 + i));
    for (int i = 0; i < 6; ++i) {
        auto comp = fixture::composite(300 + i, 2);
        if (is_colourable(comp.graph)) colourable.push_back(comp.graph);
    }
    int parity_triples = 0;
    bool parity_ok = true;
    for (int i = 0; i < 1000; ++i) {
        const auto& g = colourable[rng() % colourable.size()];
        vector<int> fixed(g.size(), 0);
        fixed[rng() % g.size()] = 1 + static_cast<int>(rng() % 3);
        auto col = *three_edge_colour(g, fixed);
        array<int, 4> perm{0, 1, 2, 3};
        std::shuffle(perm.begin() + 1, perm.end(), rng);
        for (auto& x : col) x = perm[x];
        vector<int> h;
        for (int v = 0; v < g.order(); ++v)
            if (rng() & 1) h.push_back(v);
        auto bd = boundary(g, h);
        int cnt[4] = {0, 0, 0, 0};
        for (int e : bd) ++cnt[col[e]];
        bool by_hand = true;
        for (int k = 1; k <= 3; ++k) by_hand = by_hand && cnt[k] % 2 == static_cast<int>(bd.size() % 2);
        parity_ok = parity_ok && by_hand && check_parity_lemma(g, h, col);
        ++parity_triples;
    }
    c.require(parity_ok, "parity lemma");

    // more 3-arrays for the Fano check
    for (auto& g : {petersen(), flower_snark(5)}) {
        auto pms = perfect_matchings(g);
        for (int i = 0; i < 200; ++i)
            note_array(g, ThreeArray{{pms[rng() % pms.size()], pms[rng() % pms.size()], pms[rng() % pms.size()]}});
    }
    c.require(fano_ok, "Fano flows conserve");

    // every 4-cover found
    for (auto& g : colourable) {
        auto p = find_4cover(g);
        if (p) note_4cover(g, *p);
    }
    for (int i = 0; i < 5; ++i) {
        auto g = sum2(inflate_vertex(petersen(), i).graph, colourable[i], SumSpec{SumKind::sum2, 3 + i, 0, {0, 1}}).graph;
        auto p = find_4cover(g);
        if (p) note_4cover(g, *p);
    }
    c.require(four_cover_audits_ok, "cut parity audit on 4-covers");

    // almost bipartite implies colourable
    int detected = 0;
    bool ab_ok = true;
    for (std::uint64_t s = 0; s < 40; ++s) {
        auto g = almost_bipartite_sample(s);
        if (!g) continue;
        auto ab = almost_bipartite_and_colour(*g);
        if (!ab) continue;
        ++detected;
        ab_ok = ab_ok && is_proper_colouring(*g, ab->colouring) && oracle::count_colourings(*g) > 0;
    }
    for (auto& g : {petersen(), flower_snark(5), inflate_vertex(petersen(), 0).graph})
        ab_ok = ab_ok && !almost_bipartite_and_colour(g);
    c.require(ab_ok && detected > 0, "almost bipartite graphs colourable");

    // exact scc against constructed covers
    for (auto& g : colourable) {
        if (g.order() > 14) continue;
        auto cv = cover_from_colouring(g, *three_edge_colour(g));
        verify_cover(g, cv);
        note_cover(g, cv);
    }
    for (auto& op : {OpKind::O1, OpKind::O2}) {
        RecipeOp r;
        r.kind = op;
        r.element = op == OpKind::O1 ? 10 : 8;
        r.piece_name = op == OpKind::O1 ? "K4" : "K33";
        r.piece = named_graph(r.piece_name);
        r.piece_element = 0;
        r.gluing = op == OpKind::O1 ? vector<int>{0, 1} : vector<int>{0, 1, 2};
        if (op == OpKind::O2) r.witness = quasi_bipartite(r.piece, 0);
        Recipe rec{{r}};
        auto b = apply_recipe(rec);
        note_cover(b.graph, cover_for_recipe(b.graph, rec));
    }
    bool exact_ok = true;
    for (auto& [g, len] : exact_pairs) exact_ok = exact_ok && exact_scc(g) == len;
    c.require(exact_ok && exact_pairs.size() >= 10, "exact scc agrees");

    std::cout << (c.ok ? "PASS" : "FAIL") << " 7 property suites: " << parity_triples << " parity triples, "
              << fano_arrays << " Fano arrays, " << four_covers_audited << " 4-covers audited, " << detected
              << " almost-bipartite, " << exact_pairs.size() << " exact scc comparisons (" << since(t0) << " s) "
              << c.notes.str() << "\n";
    return c.ok;
}

bool corpus_smoke(const std::string& path) {
    auto t0 = Clock::now();
    Check c;
    CorpusSummary s;
    try {
        CertifyOptions opt;
        opt.tasks = Tasks::parse("defect,pmi");
        opt.timeout = 60;
        s = run_batch(path, Format::graph6, opt, 4);
    } catch (const Error& e) {
        std::cout << "FAIL 8 corpus smoke test: " << e.what() << "\n";
        return false;
    }
    int defect3 = 0, known = 0, dichotomy_checked = 0;
    for (auto& o : s.graphs) {
        c.require(o.order <= 28, "graphs up to 28 vertices");
        if (!o.defect) continue;
        ++known;
        if (*o.defect != 3) continue;
        ++defect3;
        if (!o.c4ec) continue;
        c.require(o.pmi.has_value(), "pi known for c4ec defect-3 graph at line " + std::to_string(o.line));
        if (!o.pmi) continue;
        ++dichotomy_checked;
        c.require(*o.pmi == (o.is_petersen ? 5 : 4), "pi dichotomy at line " + std::to_string(o.line));
    }
    c.require(s.failures.empty(), "no per-graph failures");
    c.require(s.total > 0, "corpus not empty");
    std::cout << (c.ok ? "PASS" : "FAIL") << " 8 corpus smoke test: " << s.total << " graphs, defect-3 fraction "
              << defect3 << "/" << known << ", pi dichotomy checked on " << dichotomy_checked << " graphs ("
              << since(t0) << " s) " << c.notes.str() << "\n";
    return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::string corpus = argc > 1 ? argv[1] : "data/snarks.g6";
    int failed = 0;
    auto run = [&](int id, auto fn) {
        try {
            failed += !fn();
        } catch (const std::exception& e) {
            std::cout << "FAIL " << id << " raised: " << e.what() << "\n";
            ++failed;
        }
    };
    run(1, petersen_baseline);
    run(2, inflation);
    run(3, generator_soundness);
    run(4, characterization);
    run(5, decomposition_uniqueness);
    run(6, colour_type_tables);
    run(7, property_suites);
    run(8, [&] { return corpus_smoke(corpus); });
    return failed ? 1 : 0;
}
