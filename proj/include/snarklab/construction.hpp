#pragma once

#include <random>

#include "snarklab/decomposition.hpp"
#include "snarklab/named.hpp"
#include "snarklab/pm_cover.hpp"

namespace snarklab {

// ---- the base ----

struct PetersenBase {
    CubicGraph graph;
    vector<int> cycle;  // the fixed 6-cycle C
    ThreeArray array;   // optimal array with core C
    int v0 = 0;         // designated vertex of C
};

inline PetersenBase petersen_with_core() {
    PetersenBase b;
    b.graph = petersen();
    b.cycle = {0, 1, 2, 3, 4, 5};
    auto w = verify_hexagonal_core(b.graph, b.cycle);
    if (!w) throw Error(ErrorKind::VerificationFailed, "Petersen hexagon is not a core");
    b.array = array_from_hexagonal_witness(b.graph, *w);
    b.v0 = 0;
    return b;
}

// ---- recipes ----

enum class OpKind { O1, O2 };

struct RecipeOp {
    OpKind kind = OpKind::O1;
    int element = -1;  // Petersen edge (O1) or vertex (O2)
    std::string piece_name;
    CubicGraph piece;
    int piece_element = -1;  // edge (O1) or vertex (O2) of the piece
    vector<int> gluing;      // as in SumSpec, Petersen side first
    std::optional<QuasiBipartiteWitness> witness;
};

struct Recipe {
    vector<RecipeOp> ops;
};

struct BuildStep {
    OpKind kind;
    int host_element;  // edge or vertex of the graph before the step
    CubicGraph piece;
    SumSpec spec;
    SumResult sum;
    EdgeColouring piece_colouring;  // colouring of the piece used to extend the array
};

struct BuildResult {
    CubicGraph graph;
    ThreeArray array;
    vector<int> cycle;  // image of C
    int v0 = -1;
    vector<BuildStep> steps;
};

namespace construction_detail {

inline void validate_piece(const RecipeOp& op) {
    const auto& k = op.piece;
    if (!is_two_connected(k)) throw Error(ErrorKind::InvalidPiece, "piece is not 2-connected");
    if (!is_colourable(k)) throw Error(ErrorKind::InvalidPiece, "piece is not 3-edge-colourable");
    if (op.kind == OpKind::O1) {
        if (op.piece_element < 0 || op.piece_element >= k.size() || k.is_loop(op.piece_element))
            throw Error(ErrorKind::InvalidPiece, "piece edge out of range");
        return;
    }
    if (op.piece_element < 0 || op.piece_element >= k.order())
        throw Error(ErrorKind::InvalidPiece, "piece vertex out of range");
    if (!op.witness || !verify_quasi_bipartite(k, *op.witness, op.piece_element))
        throw Error(ErrorKind::InvalidPiece, "piece vertex is not a trivial component of a quasi-bipartite witness");
}

inline vector<int> default_gluing(OpKind k) { return k == OpKind::O1 ? vector<int>{0, 1} : vector<int>{0, 1, 2}; }

inline bool array_has_core(const CubicGraph& g, const ThreeArray& a, const vector<int>& cycle) {
    for (auto& m : a.m)
        if (!is_perfect_matching(g, m)) return false;
    auto c = core_of(g, a);
    auto hex = hexagon_of_core(g, c);
    if (hex.empty()) return false;
    auto x = hex, y = cycle;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
}

}  // namespace construction_detail

// Builds the graph and carries an optimal 3-array with core C through every step.
inline BuildResult apply_recipe(const Recipe& r) {
    using namespace construction_detail;
    auto base = petersen_with_core();
    vector<char> on_c(10, 0);
    for (int v : base.cycle) on_c[v] = 1;
    vector<char> used_e(15, 0), used_v(10, 0);
    for (auto& op : r.ops) {
        if (op.kind == OpKind::O1) {
            if (op.element < 0 || op.element >= 15) throw Error(ErrorKind::BadSpec, "Petersen edge out of range");
            auto [a, b] = base.graph.ends(op.element);
            if (on_c[a] && on_c[b]) throw Error(ErrorKind::CoreTouched, "O1 on an edge of C");
            if (used_e[op.element]++) throw Error(ErrorKind::ElementReuse, "Petersen edge used twice");
        } else {
            if (op.element < 0 || op.element >= 10) throw Error(ErrorKind::BadSpec, "Petersen vertex out of range");
            if (on_c[op.element]) throw Error(ErrorKind::CoreTouched, "O2 on a vertex of C");
            if (used_v[op.element]++) throw Error(ErrorKind::ElementReuse, "Petersen vertex used twice");
        }
        validate_piece(op);
    }

    BuildResult out;
    out.graph = base.graph;
    out.array = base.array;
    out.cycle = base.cycle;
    out.v0 = base.v0;
    vector<int> edge_img(15), vertex_img(10);
    std::iota(edge_img.begin(), edge_img.end(), 0);
    std::iota(vertex_img.begin(), vertex_img.end(), 0);
    for (auto& op : r.ops) {
        const CubicGraph& g = out.graph;
        auto col = *three_edge_colour(op.piece);
        SumSpec spec;
        spec.gluing = op.gluing.empty() ? default_gluing(op.kind) : op.gluing;
        spec.right = op.piece_element;
        // perm[c] = matching that takes the piece colour class c
        array<int, 4> perm{};
        int host_element;
        if (op.kind == OpKind::O1) {
            host_element = edge_img[op.element];
            spec.kind = SumKind::sum2;
            spec.left = host_element;
            int a = -1;
            for (int i = 0; i < 3; ++i)
                if (out.array.m[i][host_element]) a = i;
            int c = col[op.piece_element];
            for (int x = 1, y = 0; x <= 3; ++x) {
                if (x == c) {
                    perm[x] = a;
                    continue;
                }
                if (y == a) ++y;
                perm[x] = y++;
            }
        } else {
            host_element = vertex_img[op.element];
            spec.kind = SumKind::sum3;
            spec.left = host_element;
            decomp_detail::check_gluing(spec.gluing, 3);
            auto du = g.darts(host_element);
            auto dv = op.piece.darts(op.piece_element);
            for (int i = 0; i < 3; ++i) {
                int eu = CubicGraph::edge_of(du[i]);
                int a = -1;
                for (int j = 0; j < 3; ++j)
                    if (out.array.m[j][eu]) a = j;
                perm[col[CubicGraph::edge_of(dv[spec.gluing[i]])]] = a;
            }
        }
        auto s = apply_sum(g, op.piece, spec);
        ThreeArray next;
        for (int e = 0; e < g.size(); ++e)
            if (s.left_edge[e] >= 0)
                for (int i = 0; i < 3; ++i)
                    if (out.array.m[i][e]) next.m[i].set(s.left_edge[e]);
        for (int e = 0; e < op.piece.size(); ++e)
            if (s.right_edge[e] >= 0) next.m[perm[col[e]]].set(s.right_edge[e]);
        if (op.kind == OpKind::O1) {
            for (int c : s.cut) next.m[perm[col[op.piece_element]]].set(c);
        } else {
            auto du = g.darts(host_element);
            for (int i = 0; i < 3; ++i) {
                int eu = CubicGraph::edge_of(du[i]);
                for (int j = 0; j < 3; ++j)
                    if (out.array.m[j][eu]) next.m[j].set(s.cut[i]);
            }
        }
        // Petersen element images
        for (int e = 0; e < 15; ++e) {
            if (edge_img[e] < 0) continue;
            int img = s.left_edge[edge_img[e]];
            if (img < 0 && op.kind == OpKind::O2) {
                auto du = g.darts(host_element);
                for (int i = 0; i < 3; ++i)
                    if (CubicGraph::edge_of(du[i]) == edge_img[e]) img = s.cut[i];
            }
            edge_img[e] = img;
        }
        for (int v = 0; v < 10; ++v)
            if (vertex_img[v] >= 0) vertex_img[v] = s.left_vertex[vertex_img[v]];
        for (int& v : out.cycle) v = s.left_vertex[v];
        out.v0 = s.left_vertex[out.v0];
        out.steps.push_back(BuildStep{op.kind, host_element, op.piece, spec, s, col});
        out.graph = s.graph;
        out.array = next;
        if (!array_has_core(out.graph, out.array, out.cycle))
            throw Error(ErrorKind::VerificationFailed, "carried array lost the core");
    }
    return out;
}

// ---- piece pool and random recipes ----

struct PoolPiece {
    std::string name;
    CubicGraph graph;
};

inline vector<PoolPiece> default_pool() {
    vector<PoolPiece> p;
    for (std::string n : {"K4", "K33", "prism", "cube"}) p.push_back({n, named_graph(n)});
    return p;
}

inline vector<PoolPiece> make_pool(const vector<std::string>& names) {
    vector<PoolPiece> p;
    for (auto& n : names) p.push_back({n, named_graph(n)});
    return p;
}

inline Recipe random_recipe(std::uint64_t seed, int op_count, const vector<PoolPiece>& pool) {
    if (op_count < 0) throw Error(ErrorKind::BadSpec, "negative operation count");
    if (pool.empty() && op_count > 0) throw Error(ErrorKind::PoolExhausted, "empty piece pool");
    std::mt19937_64 rng(seed);
    auto base = petersen();
    // vertex-transitive pieces are tried at every vertex; we keep the first vertex that works
    struct Sub {
        int piece;
        vector<int> vertices;
    };
    vector<Sub> subs;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i) {
        Sub s{i, {}};
        for (int v = 0; v < pool[i].graph.order(); ++v)
            if (quasi_bipartite(pool[i].graph, v)) s.vertices.push_back(v);
        if (!s.vertices.empty()) subs.push_back(s);
    }
    // slots: Petersen edges 6..14 and vertices 6..9 lie outside C
    vector<std::pair<OpKind, int>> slots;
    for (int e = 6; e < 15; ++e) slots.push_back({OpKind::O1, e});
    if (!subs.empty())
        for (int v = 6; v < 10; ++v) slots.push_back({OpKind::O2, v});
    if (op_count > static_cast<int>(slots.size()))
        throw Error(ErrorKind::PoolExhausted, "only " + std::to_string(slots.size()) + " Petersen elements are available");
    std::shuffle(slots.begin(), slots.end(), rng);
    Recipe r;
    for (int i = 0; i < op_count; ++i) {
        RecipeOp op;
        op.kind = slots[i].first;
        op.element = slots[i].second;
        if (op.kind == OpKind::O1) {
            const auto& p = pool[std::uniform_int_distribution<int>(0, static_cast<int>(pool.size()) - 1)(rng)];
            op.piece_name = p.name;
            op.piece = p.graph;
            op.piece_element = std::uniform_int_distribution<int>(0, p.graph.size() - 1)(rng);
            op.gluing = {0, 1};
            if (rng() & 1) op.gluing = {1, 0};
        } else {
            const auto& s = subs[std::uniform_int_distribution<int>(0, static_cast<int>(subs.size()) - 1)(rng)];
            const auto& p = pool[s.piece];
            op.piece_name = p.name;
            op.piece = p.graph;
            op.piece_element = s.vertices[std::uniform_int_distribution<int>(0, static_cast<int>(s.vertices.size()) - 1)(rng)];
            op.gluing = {0, 1, 2};
            std::shuffle(op.gluing.begin(), op.gluing.end(), rng);
            op.witness = quasi_bipartite(p.graph, op.piece_element);
        }
        r.ops.push_back(std::move(op));
    }
    return r;
}

// ---- JSON ----

inline nlohmann::json to_json(const Recipe& r) {
    nlohmann::json ops = nlohmann::json::array();
    for (auto& op : r.ops) {
        nlohmann::json j{{"op", op.kind == OpKind::O1 ? "O1" : "O2"},
                         {"element", op.element},
                         {"piece_name", op.piece_name},
                         {"piece", to_jsonmg(op.piece)},
                         {"piece_element", op.piece_element},
                         {"gluing", op.gluing}};
        if (op.witness)
            j["witness"] = {{"bipartising", op.witness->bipartising}, {"quasi_partite", op.witness->quasi_partite}};
        ops.push_back(std::move(j));
    }
    return {{"base", "petersen"}, {"cycle", {0, 1, 2, 3, 4, 5}}, {"ops", ops}};
}

inline Recipe recipe_from_json(const nlohmann::json& j) {
    Recipe r;
    try {
        for (auto& jo : j.at("ops")) {
            RecipeOp op;
            std::string k = jo.at("op").get<std::string>();
            if (k != "O1" && k != "O2") throw Error(ErrorKind::SchemaError, "unknown operation " + k);
            op.kind = k == "O1" ? OpKind::O1 : OpKind::O2;
            op.element = jo.at("element").get<int>();
            op.piece_name = jo.value("piece_name", "");
            op.piece = from_jsonmg(jo.at("piece"));
            op.piece_element = jo.at("piece_element").get<int>();
            op.gluing = jo.at("gluing").get<vector<int>>();
            if (jo.contains("witness"))
                op.witness = QuasiBipartiteWitness{jo["witness"].at("bipartising").get<vector<int>>(),
                                                   jo["witness"].at("quasi_partite").get<vector<vector<int>>>()};
            r.ops.push_back(std::move(op));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::SchemaError, ex.what());
    }
    return r;
}

// ---- characterization audit ----

struct RecoveredOp {
    OpKind kind;
    int host_element;  // in the Petersen host factor
    CubicGraph piece;
    int piece_element;
    std::optional<QuasiBipartiteWitness> witness;
};

struct CharReport {
    DecompositionTree tree;
    vector<RecoveredOp> recipe;
    vector<AuditClause> clauses;
};

// Decomposes a defect-3 graph with perfect matching index 5 and checks that it
// is Petersen with O1/O2 operations applied outside the core.
inline CharReport char_audit_pi5(const CubicGraph& g) {
    if (!is_two_connected(g) || !has_defect_three(g))
        throw Error(ErrorKind::PreconditionFailed, "graph does not have defect 3");
    if (perfect_matching_index(g).value != 5)
        throw Error(ErrorKind::PreconditionFailed, "perfect matching index is not 5");
    CharReport rep;
    rep.tree = defect3_decomposition(g);
    const auto& host = rep.tree.nodes[rep.tree.host].graph;
    rep.clauses.push_back({"host factor is the Petersen graph", isomorphic(host, petersen()).has_value(), ""});
    vector<char> on_core(host.order(), 0);
    for (int v : rep.tree.host_hexagon) on_core[v] = 1;
    bool avoid = true, qb = true, attached = true;
    std::string qb_detail;
    for (auto& p : rep.tree.peels) {
        RecoveredOp op{p.kind == SumKind::sum2 ? OpKind::O1 : OpKind::O2, p.host_element, rep.tree.nodes[p.piece].graph,
                       p.piece_element, std::nullopt};
        if (p.host_element < 0) {
            attached = false;
        } else if (op.kind == OpKind::O1) {
            auto [a, b] = host.ends(p.host_element);
            if (on_core[a] && on_core[b]) avoid = false;
        } else if (on_core[p.host_element]) {
            avoid = false;
        }
        if (op.kind == OpKind::O2) {
            op.witness = quasi_bipartite(op.piece, op.piece_element);
            if (!op.witness) {
                qb = false;
                qb_detail += "piece " + std::to_string(p.piece) + " fails; ";
            }
        }
        rep.recipe.push_back(std::move(op));
    }
    rep.clauses.push_back({"every piece is attached to a host element", attached, ""});
    rep.clauses.push_back({"distinguished host elements avoid the core", avoid, ""});
    rep.clauses.push_back({"3-sum pieces are quasi-bipartite with a trivial distinguished vertex", qb, qb_detail});
    return rep;
}

// Compares recovered operations with a recipe by operation kind and piece isomorphism type.
inline bool recipe_matches(const vector<RecoveredOp>& got, const Recipe& r) {
    for (OpKind k : {OpKind::O1, OpKind::O2}) {
        vector<CubicGraph> a, b;
        for (auto& op : got)
            if (op.kind == k) a.push_back(op.piece);
        for (auto& op : r.ops)
            if (op.kind == k) b.push_back(op.piece);
        if (!same_multiset(a, b)) return false;
    }
    return true;
}

}  // namespace snarklab
