#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "snarklab/certificate.hpp"

using namespace snarklab;
using nlohmann::json;

namespace {

struct Globals {
    std::string format = "graph6";
    int jobs = 1;
    std::uint64_t seed = 0;
    double timeout = 0;
    std::string out;
};

// Thrown for a failed check; main maps it to exit code 2.
struct VerifyFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

vector<Record> load(const std::string& path, Format f) {
    std::string text = path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {}) : read_file(path);
    return split_records(text, f);
}

void emit(const Globals& gl, const std::string& name, const json& j) {
    if (gl.out.empty()) {
        std::cout << j.dump() << "\n";
        return;
    }
    std::filesystem::create_directories(gl.out);
    write_file(gl.out + "/" + name + ".json", j.dump(1));
}

vector<int> parse_ints(const std::string& s) {
    vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

json pm_list(const vector<EdgeMask>& ms, int size) {
    json a = json::array();
    for (auto& m : ms) a.push_back(mask_to_list(m, size));
    return a;
}

// Runs fn on every graph in the file; per-graph errors are reported and counted.
template <class Fn>
int each_graph(const Globals& gl, const std::string& path, Fn fn) {
    Format f = parse_format(gl.format);
    int failures = 0;
    for (auto& r : load(path, f)) {
        try {
            ScopedDeadline d(gl.timeout);
            auto g = parse_graph(r.text, f);
            json j = fn(g);
            j["line"] = r.line;
            emit(gl, "graph_" + std::to_string(r.line), j);
        } catch (const VerifyFailed& e) {
            std::cerr << "line " << r.line << ": " << e.what() << "\n";
            failures |= 2;
        } catch (const Error& e) {
            std::cerr << "line " << r.line << ": " << e.what() << "\n";
            failures |= e.kind() == ErrorKind::VerificationFailed ? 2 : 1;
        }
    }
    return failures & 2 ? 2 : failures;
}

CycleCover build_cover(const CubicGraph& g, const std::string& strategy, const std::string& recipe_path) {
    if (strategy == "4cover") {
        auto p = find_4cover(g);
        if (!p) throw Error(ErrorKind::NotFourCover, "graph has no perfect matching 4-cover");
        return cover_from_4cover(g, *p);
    }
    if (strategy == "recipe") {
        if (recipe_path.empty()) throw Error(ErrorKind::BadSpec, "--recipe is required for this strategy");
        return cover_for_recipe(g, recipe_from_json(json::parse(read_file(recipe_path))));
    }
    if (strategy == "pentagon") {
        auto c = cover_via_heavy_pentagon(g);
        if (!c) throw Error(ErrorKind::PreconditionFailed, "no heavy pentagon");
        return *c;
    }
    if (strategy == "exact") {
        CycleCover c;
        exact_scc(g, 14, &c);
        return c;
    }
    throw Error(ErrorKind::BadSpec, "unknown strategy '" + strategy + "'");
}

json quasibip_json(const CubicGraph& g, std::optional<int> v) {
    auto w = quasi_bipartite(g, v);
    if (!w) return {{"quasi_bipartite", false}};
    return {{"quasi_bipartite", true}, {"bipartising", w->bipartising}, {"components", w->quasi_partite}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"snarklab: colouring defect, perfect matching covers and short cycle covers of cubic graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals gl;
    app.add_option("--format", gl.format, "graph6 or jsonmg")->check(CLI::IsMember({"graph6", "g6", "jsonmg", "json"}));
    app.add_option("--jobs", gl.jobs, "worker threads for batch")->check(CLI::PositiveNumber);
    app.add_option("--seed", gl.seed, "random seed");
    app.add_option("--timeout", gl.timeout, "seconds per graph and task, 0 for none");
    app.add_option("--out", gl.out, "write one JSON file per result into this directory");

    std::string input;
    auto input_opt = [&](CLI::App* sub, const char* what = "input file, - for stdin") {
        sub->add_option("input", input, what)->required();
    };
    int exit_code = 0;

    auto* parse = app.add_subcommand("parse", "parse graphs and print basic invariants");
    input_opt(parse);
    parse->callback([&] {
        exit_code = each_graph(gl, input, [](const CubicGraph& g) {
            return json{{"order", g.order()},
                        {"size", g.size()},
                        {"two_connected", is_two_connected(g)},
                        {"c4ec", is_two_connected(g) && cyclically_4_edge_connected(g)},
                        {"graph6", to_graph6(g)}};
        });
    });

    auto* defect = app.add_subcommand("defect", "colouring defect with an optimal 3-array");
    input_opt(defect);
    defect->callback([&] {
        exit_code = each_graph(gl, input, [](const CubicGraph& g) {
            auto c = colouring_defect(g);
            json j{{"defect", c.defect},
                   {"witness", pm_list({c.witness.m[0], c.witness.m[1], c.witness.m[2]}, g.size())},
                   {"uncovered", c.core.uncovered},
                   {"hexagonal", c.hexagonal}};
            if (c.hexagonal) j["hexagon"] = c.hexagon;
            return j;
        });
    });

    auto* pmi = app.add_subcommand("pmi", "perfect matching index with a minimum cover");
    input_opt(pmi);
    pmi->callback([&] {
        exit_code = each_graph(gl, input, [](const CubicGraph& g) {
            auto r = perfect_matching_index(g);
            json j{{"pmi", r.value}};
            if (r.cover) j["cover"] = pm_list(r.cover->matchings, g.size());
            return j;
        });
    });

    auto* cover4 = app.add_subcommand("cover4", "perfect matching 4-cover and its cut parity audit");
    input_opt(cover4);
    cover4->callback([&] {
        exit_code = each_graph(gl, input, [](const CubicGraph& g) {
            auto c = find_4cover(g);
            if (!c) return json{{"four_cover", false}};
            auto audit = cut_parity_audit(g, *c);
            if (!all_pass(audit)) throw VerifyFailed("cut parity audit failed");
            return json{{"four_cover", true}, {"cover", pm_list(c->matchings, g.size())}};
        });
    });

    int qb_vertex = -1;
    auto* quasibip = app.add_subcommand("quasibip", "search for a bipartising set");
    input_opt(quasibip);
    quasibip->add_option("--vertex", qb_vertex, "vertex that must form a singleton component");
    quasibip->callback([&] {
        exit_code = each_graph(gl, input, [&](const CubicGraph& g) {
            return quasibip_json(g, qb_vertex >= 0 ? std::optional<int>(qb_vertex) : std::nullopt);
        });
    });

    std::string types_vertices, types_boundary;
    auto* types = app.add_subcommand("types", "colour types of a 6-pole; no input gives the hexagon-triangle fragment");
    types->add_option("input", input, "graph file");
    types->add_option("--vertices", types_vertices, "comma separated vertex set H");
    types->add_option("--boundary", types_boundary, "comma separated boundary edges in cyclic order");
    types->callback([&] {
        if (input.empty()) {
            auto f = hexagon_triangle_fragment();
            std::set<std::string> t;
            for (auto& x : pole_colour_types(f.pole, f.dangling))
                if (full_palette(x)) t.insert(x);
            json missing = json::array();
            for (auto& x : all_full_palette_types())
                if (!t.count(x)) missing.push_back(x);
            emit(gl, "types", {{"types", t}, {"complement", missing}});
            return;
        }
        exit_code = each_graph(gl, input, [&](const CubicGraph& g) {
            return json{{"types", colour_types(g, parse_ints(types_vertices), parse_ints(types_boundary))}};
        });
    });

    auto* decompose = app.add_subcommand("decompose", "canonical decomposition into cyclically 4-edge-connected factors");
    bool defect3 = false;
    input_opt(decompose);
    decompose->add_flag("--defect3", defect3, "use the defect-3 refinement with a Petersen-like host");
    decompose->callback([&] {
        exit_code = each_graph(gl, input, [&](const CubicGraph& g) {
            auto t = defect3 ? defect3_decomposition(g) : canonical_decomposition(g, gl.seed);
            auto j = to_json(t);
            json fs = json::array();
            for (auto& f : t.factor_graphs()) fs.push_back(to_graph6(f));
            j["factors_graph6"] = fs;
            return j;
        });
    });

    auto* reassemble_cmd = app.add_subcommand("reassemble", "rebuild a graph from a decomposition JSON file");
    input_opt(reassemble_cmd, "decomposition JSON");
    reassemble_cmd->callback([&] {
        auto t = decomposition_from_json(json::parse(read_file(input)));
        auto r = reassemble(t);
        bool same = isomorphic(r.graph, t.nodes[0].graph).has_value();
        emit(gl, "reassembled", {{"graph", to_jsonmg(r.graph)}, {"graph6", to_graph6(r.graph)}, {"matches_root", same}});
        if (!same) exit_code = 2;
    });

    int ops = 2;
    std::string pool_names = "K4,K33,prism,cube";
    auto* generate = app.add_subcommand("generate", "random recipe, built graph and its certificate");
    generate->add_option("--ops", ops, "number of operations")->check(CLI::Range(1, 13));
    generate->add_option("--pool", pool_names, "comma separated piece names");
    generate->callback([&] {
        std::vector<std::string> names;
        std::stringstream ss(pool_names);
        for (std::string s; std::getline(ss, s, ',');) names.push_back(s);
        auto r = random_recipe(gl.seed, ops, make_pool(names));
        auto b = apply_recipe(r);
        auto cert = certify_recipe(b.graph, r, gl.seed);
        if (!verify_certificate(cert)) throw VerifyFailed("fresh certificate does not verify");
        emit(gl, "generated_" + std::to_string(gl.seed),
             {{"graph", to_jsonmg(b.graph)}, {"graph6", to_graph6(b.graph)}, {"certificate", cert}});
    });

    std::string strategy = "4cover", recipe_path;
    auto* scc_build = app.add_subcommand("scc-build", "build and verify a short cycle cover");
    input_opt(scc_build);
    scc_build->add_option("--strategy", strategy)->check(CLI::IsMember({"4cover", "recipe", "pentagon", "exact"}));
    scc_build->add_option("--recipe", recipe_path, "recipe JSON for the recipe strategy");
    scc_build->callback([&] {
        exit_code = each_graph(gl, input, [&](const CubicGraph& g) {
            auto c = build_cover(g, strategy, recipe_path);
            auto rep = verify_cover(g, c);
            auto j = to_json(g, c);
            j["graph"] = to_jsonmg(g);
            j["strategy"] = strategy;
            j["four_thirds"] = rep.four_thirds;
            j["plus_one_profile"] = rep.plus_one;
            return j;
        });
    });

    auto* scc_verify = app.add_subcommand("scc-verify", "check a cover file holding graph and cycles");
    input_opt(scc_verify, "cover JSON");
    scc_verify->callback([&] {
        auto j = json::parse(read_file(input));
        const auto& cj = j.contains("analyses") ? j["analyses"].at("cover") : j;
        auto g = from_jsonmg(j.at("graph"));
        try {
            auto rep = verify_cover(g, cover_from_json(cj));
            emit(gl, "scc_verify", {{"valid", true}, {"length", rep.length}, {"m", rep.m},
                                    {"four_thirds", rep.four_thirds}, {"plus_one_profile", rep.plus_one}});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NotACycle && e.kind() != ErrorKind::Uncovered) throw;
            emit(gl, "scc_verify", {{"valid", false}, {"reason", e.what()}});
            exit_code = 2;
        }
    });

    auto* audit = app.add_subcommand("audit", "structural audits; defect-3 graphs with index 5 get the full characterization");
    input_opt(audit);
    audit->callback([&] {
        exit_code = each_graph(gl, input, [&](const CubicGraph& g) {
            vector<AuditClause> clauses;
            json j;
            auto dc = colouring_defect(g);
            j["defect"] = dc.defect;
            if (dc.hexagonal) {
                auto a = core_position_audit(g, dc);
                clauses.insert(clauses.end(), a.begin(), a.end());
            }
            if (dc.defect == 3 && is_two_connected(g) && perfect_matching_index(g).value == 5) {
                auto rep = char_audit_pi5(g);
                clauses.insert(clauses.end(), rep.clauses.begin(), rep.clauses.end());
                json ops = json::array();
                for (auto& op : rep.recipe)
                    ops.push_back({{"kind", op.kind == OpKind::O1 ? "O1" : "O2"}, {"host_element", op.host_element},
                                   {"piece", to_graph6(op.piece)}});
                j["recovered_ops"] = ops;
            }
            json cl = json::array();
            for (auto& c : clauses) cl.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
            j["clauses"] = cl;
            if (!all_pass(clauses)) throw VerifyFailed("audit clause failed");
            return j;
        });
    });

    std::string tasks = "all";
    auto* batch = app.add_subcommand("batch", "certify every graph in a corpus file and summarize");
    input_opt(batch, "corpus file");
    batch->add_option("--tasks", tasks, "comma list of defect,pmi,decompose,scc,audits,strong or all");
    batch->callback([&] {
        CertifyOptions opt{Tasks::parse(tasks), gl.timeout, gl.seed};
        if (!gl.out.empty()) std::filesystem::create_directories(gl.out);
        auto s = run_batch(input, parse_format(gl.format), opt, gl.jobs, gl.out);
        int bad = 0;
        for (auto& o : s.graphs) bad += !verify_certificate(o.certificate);
        auto j = s.to_json();
        j["unverified_certificates"] = bad;
        std::cout << j.dump() << "\n";
        if (bad) exit_code = 2;
    });

    vector<std::string> cert_files;
    auto* verify_cert = app.add_subcommand("verify-cert", "re-check certificates");
    verify_cert->add_option("certificates", cert_files)->required();
    verify_cert->callback([&] {
        for (auto& f : cert_files) {
            auto j = json::parse(read_file(f));
            if (j.contains("certificate")) j = j["certificate"];
            bool ok = verify_certificate(j);
            std::cout << f << ": " << (ok ? "valid" : "INVALID") << "\n";
            if (!ok) exit_code = 2;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const VerifyFailed& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return e.kind() == ErrorKind::VerificationFailed ? 2 : 1;
    } catch (const json::exception& e) {
        std::cerr << "SchemaError: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
