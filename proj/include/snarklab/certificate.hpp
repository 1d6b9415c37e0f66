#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "snarklab/cycle_cover.hpp"

namespace snarklab {

inline constexpr const char* kToolVersion = "snarklab 0.3.0";
inline constexpr const char* kCertSchema = "snarklab-certificate/1";

struct Tasks {
    bool defect = true;
    bool pmi = true;
    bool decompose = true;
    bool scc = true;
    bool audits = true;
    bool strong = true;

    static Tasks parse(const std::string& list) {
        if (list == "all" || list.empty()) return Tasks{};
        Tasks t{false, false, false, false, false, false};
        std::stringstream ss(list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "defect") t.defect = true;
            else if (item == "pmi") t.pmi = true;
            else if (item == "decompose") t.decompose = true;
            else if (item == "scc") t.scc = true;
            else if (item == "audits") t.audits = true;
            else if (item == "strong") t.strong = true;
            else throw Error(ErrorKind::BadSpec, "unknown task '" + item + "'");
        }
        return t;
    }
};

namespace cert_detail {

inline nlohmann::json masks(const vector<EdgeMask>& ms, int size) {
    nlohmann::json a = nlohmann::json::array();
    for (auto& m : ms) a.push_back(mask_to_list(m, size));
    return a;
}

inline vector<EdgeMask> masks_from(const nlohmann::json& j) {
    vector<EdgeMask> out;
    for (auto& x : j) out.push_back(list_to_mask(x.get<vector<int>>()));
    return out;
}

inline nlohmann::json clauses(const vector<AuditClause>& cs) {
    nlohmann::json a = nlohmann::json::array();
    for (auto& c : cs) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return a;
}

inline nlohmann::json timeout_entry() { return {{"status", "unknown"}, {"reason", "timeout"}}; }

}  // namespace cert_detail

struct CertifyOptions {
    Tasks tasks;
    double timeout = 0;  // seconds per task, 0 = none
    std::uint64_t seed = 0;
};

// Runs the requested analyses and bundles every witness with the graph.
// Timeouts mark a task as unknown instead of failing the graph.
inline nlohmann::json certify(const CubicGraph& g, const CertifyOptions& opt = {}) {
    using namespace cert_detail;
    require_bridgeless(g);
    nlohmann::json cert{{"schema", kCertSchema}, {"tool_version", kToolVersion}, {"seed", opt.seed},
                        {"graph", to_jsonmg(g)}};
    nlohmann::json an = nlohmann::json::object();
    const bool colourable = is_colourable(g);
    std::optional<DefectCertificate> dc;
    std::optional<PMIResult> pmi;
    if (opt.tasks.defect || opt.tasks.audits) {
        try {
            ScopedDeadline d(opt.timeout);
            dc = colouring_defect(g);
            nlohmann::json j{{"status", "ok"},
                             {"defect", dc->defect},
                             {"witness", masks({dc->witness.m[0], dc->witness.m[1], dc->witness.m[2]}, g.size())},
                             {"uncovered", dc->core.uncovered},
                             {"hexagonal", dc->hexagonal}};
            if (dc->hexagonal) j["hexagon"] = dc->hexagon;
            an["defect"] = j;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Timeout) throw;
            an["defect"] = timeout_entry();
        }
    }
    if (opt.tasks.pmi || opt.tasks.scc) {
        try {
            ScopedDeadline d(opt.timeout);
            pmi = perfect_matching_index(g);
            nlohmann::json j{{"status", "ok"}, {"value", pmi->value}};
            if (pmi->cover) j["cover"] = masks(pmi->cover->matchings, g.size());
            if (pmi->value >= 5) j["four_cover_search"] = {{"nodes", pmi->four.nodes}, {"exhausted", pmi->four.exhausted}};
            an["pmi"] = j;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Timeout) throw;
            an["pmi"] = timeout_entry();
        }
    }
    if (opt.tasks.decompose) {
        try {
            ScopedDeadline d(opt.timeout);
            an["decomposition"] = to_json(canonical_decomposition(g, opt.seed));
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Timeout) throw;
            an["decomposition"] = timeout_entry();
        }
    }
    if (opt.tasks.scc) {
        try {
            ScopedDeadline d(opt.timeout);
            std::optional<CycleCover> cover;
            std::string strategy;
            if (colourable) {
                cover = cover_from_colouring(g, *three_edge_colour(g));
                strategy = "colouring";
            } else if (pmi && pmi->value == 4) {
                cover = cover_from_4cover(g, *pmi->cover);
                strategy = "4cover";
            } else if ((cover = cover_via_heavy_pentagon(g))) {
                strategy = "pentagon";
            } else if (g.order() <= 14) {
                CycleCover c;
                exact_scc(g, 14, &c);
                cover = c;
                strategy = "exact";
            }
            if (cover) {
                auto rep = verify_cover(g, *cover);
                auto j = to_json(g, *cover);
                j["status"] = "ok";
                j["strategy"] = strategy;
                j["plus_one_profile"] = rep.plus_one;
                j["four_thirds"] = rep.four_thirds;
                an["cover"] = j;
            } else {
                an["cover"] = {{"status", "none"}};
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Timeout) throw;
            an["cover"] = timeout_entry();
        }
    }
    if (opt.tasks.audits) {
        vector<AuditClause> all;
        if (dc && dc->hexagonal) {
            auto a = core_position_audit(g, *dc);
            all.insert(all.end(), a.begin(), a.end());
        }
        if (pmi && pmi->value == 4) {
            auto a = cut_parity_audit(g, *pmi->cover);
            all.insert(all.end(), a.begin(), a.end());
        }
        if (dc) {
            auto f = fano_colouring(g, dc->witness);
            all.push_back({"Fano flow conserves at every vertex", f.kirchhoff, ""});
        }
        an["audits"] = clauses(all);
    }
    if (opt.tasks.strong && !colourable) {
        an["strong"] = strong_snark(g);
        an["heavy_pentagon"] = !heavy_pentagons(g).empty();
    }
    cert["analyses"] = an;
    return cert;
}

// Certificate for a recipe graph: defect witness with core C, the exhausted
// 4-cover search, a 5-cover and the constructive cover. Everything is rechecked.
inline nlohmann::json certify_recipe(const CubicGraph& g, const Recipe& r, std::uint64_t seed = 0) {
    using namespace cert_detail;
    auto b = apply_recipe(r);
    auto f = isomorphic(b.graph, g);
    if (!f) throw Error(ErrorKind::VerificationFailed, "graph is not the output of the recipe");
    auto em = edge_map_from_vertex_map(b.graph, g, *f);
    auto move = [&](const EdgeMask& m) { return cover_detail::map_edges(m, b.graph.size(), em); };
    ThreeArray a{{move(b.array.m[0]), move(b.array.m[1]), move(b.array.m[2])}};
    auto dc = make_certificate(g, a);
    vector<int> hex;
    for (int v : b.cycle) hex.push_back((*f)[v]);
    auto sorted = [](vector<int> x) {
        std::sort(x.begin(), x.end());
        return x;
    };
    if (dc.defect != 3 || !dc.hexagonal || sorted(dc.hexagon) != sorted(hex))
        throw Error(ErrorKind::VerificationFailed, "carried array does not have core C");
    auto pmi = perfect_matching_index(g);
    if (pmi.value != 5 || !pmi.four.exhausted) throw Error(ErrorKind::VerificationFailed, "perfect matching index is not 5");
    auto cover = cover_for_recipe(g, r);
    auto rep = verify_cover(g, cover);
    if (!rep.plus_one || rep.heavy_vertex != (*f)[b.v0])
        throw Error(ErrorKind::VerificationFailed, "cover does not have the expected weight profile");
    nlohmann::json cert{{"schema", kCertSchema}, {"tool_version", kToolVersion}, {"seed", seed}, {"graph", to_jsonmg(g)}};
    auto cj = to_json(g, cover);
    cj["status"] = "ok";
    cj["strategy"] = "recipe";
    cj["plus_one_profile"] = true;
    cj["heavy_vertex"] = rep.heavy_vertex;
    cert["analyses"] = {
        {"defect",
         {{"status", "ok"},
          {"defect", 3},
          {"witness", masks({a.m[0], a.m[1], a.m[2]}, g.size())},
          {"uncovered", dc.core.uncovered},
          {"hexagonal", true},
          {"hexagon", hex}}},
        {"pmi",
         {{"status", "ok"},
          {"value", 5},
          {"cover", masks(pmi.cover->matchings, g.size())},
          {"four_cover_search", {{"nodes", pmi.four.nodes}, {"exhausted", pmi.four.exhausted}}}}},
        {"cover", cj}};
    cert["recipe"] = to_json(r);
    return cert;
}

// Re-runs the cheap checks against the embedded graph; searches are not repeated.
inline bool verify_certificate(const nlohmann::json& cert) {
    using namespace cert_detail;
    CubicGraph g;
    try {
        if (!cert.is_object() || cert.value("schema", "") != kCertSchema)
            throw Error(ErrorKind::SchemaError, "unknown certificate schema");
        g = from_jsonmg(cert.at("graph"));
        const auto& an = cert.at("analyses");
        if (an.contains("defect") && an["defect"].value("status", "") == "ok") {
            const auto& d = an["defect"];
            auto w = masks_from(d.at("witness"));
            if (w.size() != 3) return false;
            for (auto& m : w)
                if (!is_perfect_matching(g, m)) return false;
            auto dcert = make_certificate(g, ThreeArray{{w[0], w[1], w[2]}});
            if (dcert.defect != d.at("defect").get<int>()) return false;
            if (d.at("hexagonal").get<bool>() != dcert.hexagonal) return false;
            if (dcert.defect == 0 && !is_colourable(g)) return false;
        }
        if (an.contains("pmi") && an["pmi"].value("status", "") == "ok") {
            const auto& p = an["pmi"];
            int value = p.at("value").get<int>();
            if (value <= 5) {
                PMCover c{masks_from(p.at("cover"))};
                if (static_cast<int>(c.matchings.size()) != value || !verify_pm_cover(g, c)) return false;
            }
            if (value >= 5 && !p.at("four_cover_search").at("exhausted").get<bool>()) return false;
        }
        if (an.contains("cover") && an["cover"].value("status", "") == "ok") {
            const auto& c = an["cover"];
            auto cover = cover_from_json(c);
            auto rep = verify_cover(g, cover);
            if (rep.length != c.at("length").get<int>()) return false;
            if (c.value("plus_one_profile", false) && !rep.plus_one) return false;
            if (c.value("four_thirds", false) && !rep.four_thirds) return false;
        }
        if (an.contains("decomposition") && an["decomposition"].contains("nodes")) {
            auto t = decomposition_from_json(an["decomposition"]);
            if (!(t.nodes[0].graph == g)) return false;
            if (!isomorphic(reassemble(t).graph, g)) return false;
            if (!vertex_partition_ok(t)) return false;
        }
        if (cert.contains("recipe")) {
            auto b = apply_recipe(recipe_from_json(cert["recipe"]));
            if (!isomorphic(b.graph, g)) return false;
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::SchemaError, ex.what());
    } catch (const std::out_of_range&) {
        return false;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::SchemaError) throw;
        return false;
    }
    return true;
}

// ---- batch ----

struct Failure {
    int line = 0;
    std::string kind;
    std::string message;
};

struct GraphOutcome {
    int line = 0;
    int order = 0;
    std::optional<int> defect;  // absent when unknown
    std::optional<int> pmi;
    bool c4ec = false;
    bool is_petersen = false;
    std::optional<bool> heavy;
    std::optional<bool> strong;
    nlohmann::json certificate;
};

struct CorpusSummary {
    int total = 0;
    std::map<std::string, int> defect, pmi, heavy, strength;
    vector<Failure> failures;
    vector<GraphOutcome> graphs;

    nlohmann::json to_json() const {
        nlohmann::json f = nlohmann::json::array();
        for (auto& x : failures) f.push_back({{"line", x.line}, {"kind", x.kind}, {"message", x.message}});
        return {{"total", total}, {"defect", defect}, {"pmi", pmi}, {"heavy_pentagon", heavy},
                {"strength", strength}, {"failures", f}};
    }
};

inline GraphOutcome analyse_one(const CubicGraph& g, const CertifyOptions& opt) {
    GraphOutcome o;
    o.order = g.order();
    o.certificate = certify(g, opt);
    const auto& an = o.certificate["analyses"];
    if (an.contains("defect") && an["defect"].contains("defect")) o.defect = an["defect"]["defect"].get<int>();
    if (an.contains("pmi") && an["pmi"].contains("value")) o.pmi = an["pmi"]["value"].get<int>();
    if (an.contains("heavy_pentagon")) o.heavy = an["heavy_pentagon"].get<bool>();
    if (an.contains("strong")) o.strong = an["strong"].get<bool>();
    o.c4ec = cyclically_4_edge_connected(g);
    o.is_petersen = g.order() == 10 && isomorphic(g, petersen()).has_value();
    return o;
}

// Per-graph work runs on `jobs` threads; results are stored by input position
// so the summary does not depend on scheduling.
inline CorpusSummary run_batch(const vector<Record>& records, Format fmt, const CertifyOptions& opt, int jobs,
                               const std::string& out_dir = "") {
    const int n = static_cast<int>(records.size());
    vector<std::optional<GraphOutcome>> res(n);
    vector<std::optional<Failure>> fail(n);
    std::atomic<int> next{0};
    std::mutex io;
    auto worker = [&]() {
        for (int i = next++; i < n; i = next++) {
            try {
                auto g = parse_graph(records[i].text, fmt);
                auto o = analyse_one(g, opt);
                o.line = records[i].line;
                if (!out_dir.empty()) {
                    std::lock_guard<std::mutex> lock(io);
                    write_file(out_dir + "/graph_" + std::to_string(records[i].line) + ".json", o.certificate.dump(1));
                }
                res[i] = std::move(o);
            } catch (const Error& e) {
                fail[i] = Failure{records[i].line, kind_name(e.kind()), e.what()};
            } catch (const std::exception& e) {
                fail[i] = Failure{records[i].line, "Internal", e.what()};
            }
        }
    };
    vector<std::thread> pool;
    for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    CorpusSummary s;
    s.total = n;
    for (int i = 0; i < n; ++i) {
        if (fail[i]) {
            s.failures.push_back(*fail[i]);
            continue;
        }
        auto& o = *res[i];
        s.defect[!o.defect ? "unknown" : *o.defect == 0 ? "defect0" : *o.defect == 3 ? "defect3" : "defect4+"]++;
        s.pmi[!o.pmi ? "unknown" : "pi" + std::to_string(*o.pmi)]++;
        if (o.heavy) s.heavy[*o.heavy ? "yes" : "no"]++;
        if (o.strong) s.strength[*o.strong ? "strong" : "weak"]++;
        s.graphs.push_back(std::move(o));
    }
    return s;
}

inline CorpusSummary run_batch(const std::string& path, Format fmt, const CertifyOptions& opt, int jobs,
                               const std::string& out_dir = "") {
    return run_batch(split_records(read_file(path), fmt), fmt, opt, jobs, out_dir);
}

}  // namespace snarklab
