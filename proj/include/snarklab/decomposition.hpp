#pragma once

#include <map>
#include <random>

#include "snarklab/defect.hpp"
#include "snarklab/io.hpp"
#include "snarklab/iso.hpp"

namespace snarklab {

enum class SumKind { sum2, sum3 };

// gluing[i] = index of the right half-edge joined to left half-edge i. For sum2
// the half-edges of edge e are ends(e)[0], ends(e)[1]; for sum3 they are the
// darts at the vertex in stored order.
struct SumSpec {
    SumKind kind = SumKind::sum2;
    int left = -1;
    int right = -1;
    vector<int> gluing;
};

struct SumResult {
    CubicGraph graph;
    vector<int> left_vertex, right_vertex;  // -1 for deleted vertices
    vector<int> left_edge, right_edge;      // -1 for deleted edges
    vector<int> cut;                        // principal cut; cut[i] comes from left half-edge i
    bool proper = true;
};

namespace decomp_detail {

inline void check_gluing(const vector<int>& g, int k) {
    if (static_cast<int>(g.size()) != k) throw Error(ErrorKind::BadSpec, "gluing has the wrong size");
    vector<char> seen(k, 0);
    for (int x : g) {
        if (x < 0 || x >= k || seen[x]) throw Error(ErrorKind::BadSpec, "gluing is not a bijection");
        seen[x] = 1;
    }
}

inline bool on_parallel_pair(const CubicGraph& g, int v) {
    auto nb = g.neighbours(v);
    return nb[0] == nb[1] || nb[1] == nb[2] || nb[0] == nb[2];
}

}  // namespace decomp_detail

inline SumResult sum2(const CubicGraph& h, const CubicGraph& k, const SumSpec& spec) {
    if (spec.kind != SumKind::sum2) throw Error(ErrorKind::BadSpec, "sum2 needs a sum2 spec");
    if (spec.left < 0 || spec.left >= h.size() || spec.right < 0 || spec.right >= k.size())
        throw Error(ErrorKind::BadSpec, "distinguished edge out of range");
    if (h.is_loop(spec.left) || k.is_loop(spec.right)) throw Error(ErrorKind::BadSpec, "distinguished edge is a loop");
    decomp_detail::check_gluing(spec.gluing, 2);
    SumResult r;
    const int nh = h.order();
    r.left_vertex.resize(nh);
    std::iota(r.left_vertex.begin(), r.left_vertex.end(), 0);
    r.right_vertex.resize(k.order());
    std::iota(r.right_vertex.begin(), r.right_vertex.end(), nh);
    vector<array<int, 2>> es;
    r.left_edge.assign(h.size(), -1);
    r.right_edge.assign(k.size(), -1);
    for (int e = 0; e < h.size(); ++e) {
        if (e == spec.left) continue;
        r.left_edge[e] = static_cast<int>(es.size());
        es.push_back(h.ends(e));
    }
    for (int e = 0; e < k.size(); ++e) {
        if (e == spec.right) continue;
        r.right_edge[e] = static_cast<int>(es.size());
        es.push_back({k.ends(e)[0] + nh, k.ends(e)[1] + nh});
    }
    for (int i = 0; i < 2; ++i) {
        r.cut.push_back(static_cast<int>(es.size()));
        es.push_back({h.ends(spec.left)[i], k.ends(spec.right)[spec.gluing[i]] + nh});
    }
    r.graph = CubicGraph(nh + k.order(), std::move(es));
    return r;
}

inline SumResult sum3(const CubicGraph& h, const CubicGraph& k, const SumSpec& spec) {
    if (spec.kind != SumKind::sum3) throw Error(ErrorKind::BadSpec, "sum3 needs a sum3 spec");
    if (spec.left < 0 || spec.left >= h.order() || spec.right < 0 || spec.right >= k.order())
        throw Error(ErrorKind::BadSpec, "distinguished vertex out of range");
    for (int e : h.incident(spec.left))
        if (h.is_loop(e)) throw Error(ErrorKind::BadSpec, "distinguished vertex carries a loop");
    for (int e : k.incident(spec.right))
        if (k.is_loop(e)) throw Error(ErrorKind::BadSpec, "distinguished vertex carries a loop");
    decomp_detail::check_gluing(spec.gluing, 3);
    SumResult r;
    r.proper = !decomp_detail::on_parallel_pair(h, spec.left) && !decomp_detail::on_parallel_pair(k, spec.right);
    int next = 0;
    r.left_vertex.assign(h.order(), -1);
    for (int v = 0; v < h.order(); ++v)
        if (v != spec.left) r.left_vertex[v] = next++;
    r.right_vertex.assign(k.order(), -1);
    for (int v = 0; v < k.order(); ++v)
        if (v != spec.right) r.right_vertex[v] = next++;
    vector<array<int, 2>> es;
    r.left_edge.assign(h.size(), -1);
    r.right_edge.assign(k.size(), -1);
    for (int e = 0; e < h.size(); ++e) {
        auto [a, b] = h.ends(e);
        if (a == spec.left || b == spec.left) continue;
        r.left_edge[e] = static_cast<int>(es.size());
        es.push_back({r.left_vertex[a], r.left_vertex[b]});
    }
    for (int e = 0; e < k.size(); ++e) {
        auto [a, b] = k.ends(e);
        if (a == spec.right || b == spec.right) continue;
        r.right_edge[e] = static_cast<int>(es.size());
        es.push_back({r.right_vertex[a], r.right_vertex[b]});
    }
    auto du = h.darts(spec.left), dv = k.darts(spec.right);
    for (int i = 0; i < 3; ++i) {
        int x = h.head(du[i]);
        int y = k.head(dv[spec.gluing[i]]);
        r.cut.push_back(static_cast<int>(es.size()));
        es.push_back({r.left_vertex[x], r.right_vertex[y]});
    }
    r.graph = CubicGraph(next, std::move(es));
    return r;
}

inline SumResult apply_sum(const CubicGraph& h, const CubicGraph& k, const SumSpec& spec) {
    return spec.kind == SumKind::sum2 ? sum2(h, k, spec) : sum3(h, k, spec);
}

// ---- splitting along a cut ----

struct Split {
    CubicGraph left, right;  // completions; left is built from the smaller side
    SumSpec spec;            // apply_sum(left, right, spec) rebuilds the graph
    EdgeCut cut;
    vector<int> left_vertex_origin, right_vertex_origin;  // -1 for the completion vertex
    vector<int> left_edge_origin, right_edge_origin;      // -1 for completion edges
    array<vector<int>, 2> cut_image;                      // completion edge standing for cut edge i, per side
};

inline Split decompose_along(const CubicGraph& g, const vector<int>& cut_edges) {
    const int k = static_cast<int>(cut_edges.size());
    if (k < 2 || k > 3 || !pairwise_independent(g, cut_edges))
        throw Error(ErrorKind::CutNotSmallIndependent, "cut must consist of 2 or 3 independent edges");
    auto cut = as_cut(g, cut_edges);
    if (!cut) throw Error(ErrorKind::CutNotSmallIndependent, "edges do not form an edge cut");
    Split s;
    s.cut = *cut;
    vector<int> side(g.order(), 1);
    for (int v : cut->side_a) side[v] = 0;
    vector<int> local(g.order(), -1);
    array<int, 2> count{0, 0};
    for (int v = 0; v < g.order(); ++v) local[v] = count[side[v]]++;
    array<vector<array<int, 2>>, 2> es;
    array<vector<int>, 2> vorigin, eorigin;
    for (int t = 0; t < 2; ++t) vorigin[t].assign(count[t], -1);
    for (int v = 0; v < g.order(); ++v) vorigin[side[v]][local[v]] = v;
    for (int e = 0; e < g.size(); ++e) {
        auto [a, b] = g.ends(e);
        if (side[a] != side[b]) continue;
        es[side[a]].push_back({local[a], local[b]});
        eorigin[side[a]].push_back(e);
    }
    // endpoints of cut edge i on each side, in the order given by the caller
    array<vector<int>, 2> port;
    for (int e : cut_edges) {
        auto [a, b] = g.ends(e);
        if (side[a] == 1) std::swap(a, b);
        port[0].push_back(local[a]);
        port[1].push_back(local[b]);
    }
    array<int, 2> distinguished{};
    for (int t = 0; t < 2; ++t) {
        if (k == 2) {
            distinguished[t] = static_cast<int>(es[t].size());
            s.cut_image[t] = {distinguished[t], distinguished[t]};
            es[t].push_back({port[t][0], port[t][1]});
            eorigin[t].push_back(-1);
        } else {
            int x = count[t]++;
            distinguished[t] = x;
            vorigin[t].push_back(-1);
            for (int i = 0; i < 3; ++i) {
                s.cut_image[t].push_back(static_cast<int>(es[t].size()));
                es[t].push_back({port[t][i], x});
                eorigin[t].push_back(-1);
            }
        }
    }
    s.left = CubicGraph(count[0], std::move(es[0]));
    s.right = CubicGraph(count[1], std::move(es[1]));
    s.spec.kind = k == 2 ? SumKind::sum2 : SumKind::sum3;
    s.spec.left = distinguished[0];
    s.spec.right = distinguished[1];
    s.spec.gluing.resize(k);
    std::iota(s.spec.gluing.begin(), s.spec.gluing.end(), 0);
    s.left_vertex_origin = std::move(vorigin[0]);
    s.right_vertex_origin = std::move(vorigin[1]);
    s.left_edge_origin = std::move(eorigin[0]);
    s.right_edge_origin = std::move(eorigin[1]);
    return s;
}

// ---- decomposition trees ----

enum class FactorKind { colourable, defect_host, unclassified };

inline const char* factor_kind_name(FactorKind k) {
    switch (k) {
    case FactorKind::colourable: return "colourable";
    case FactorKind::defect_host: return "defect_host";
    default: return "unclassified";
    }
}

struct DecompNode {
    CubicGraph graph;
    int parent = -1;
    vector<int> vertex_origin;  // into the parent graph, -1 for completion elements
    vector<int> edge_origin;
    array<int, 2> children{-1, -1};
    vector<int> cut;  // cut of this graph that was split, for internal nodes
    SumSpec spec;     // rebuilds this graph from the two children
    FactorKind kind = FactorKind::unclassified;

    bool leaf() const { return children[0] < 0; }
};

// One colourable piece removed from the defect host, in the ids of the final host factor.
struct Peel {
    SumKind kind = SumKind::sum2;
    int host_element = -1;   // edge (sum2) or vertex (sum3) of the host factor, -1 if not kept
    int piece = -1;          // node index of the piece completion
    int piece_element = -1;  // its completion edge or vertex
};

struct DecompositionTree {
    vector<DecompNode> nodes;  // nodes[0] is the input graph
    int host = -1;             // defect host factor, defect3 decomposition only
    vector<int> host_hexagon;  // hexagonal core in host ids
    vector<Peel> peels;
    vector<int> host_triangle;  // triangle meeting the core when the host is not c4ec
    vector<AuditClause> audit;

    vector<int> factors() const {
        vector<int> out;
        for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
            if (nodes[i].leaf()) out.push_back(i);
        return out;
    }
    vector<CubicGraph> factor_graphs() const {
        vector<CubicGraph> out;
        for (int i : factors()) out.push_back(nodes[i].graph);
        return out;
    }
};

namespace decomp_detail {

inline int add_split(DecompositionTree& t, int node, const Split& s) {
    int base = static_cast<int>(t.nodes.size());
    for (int side = 0; side < 2; ++side) {
        DecompNode c;
        c.graph = side == 0 ? s.left : s.right;
        c.parent = node;
        c.vertex_origin = side == 0 ? s.left_vertex_origin : s.right_vertex_origin;
        c.edge_origin = side == 0 ? s.left_edge_origin : s.right_edge_origin;
        t.nodes.push_back(std::move(c));
    }
    t.nodes[node].children = {base, base + 1};
    t.nodes[node].cut = s.cut.edges;
    t.nodes[node].spec = s.spec;
    return base;
}

inline void split_all(DecompositionTree& t, int node, std::mt19937_64& rng, FactorKind kind) {
    auto cuts = small_independent_cuts(t.nodes[node].graph);
    if (cuts.empty()) {
        t.nodes[node].kind = kind;
        return;
    }
    // 2-cuts go first. A 3-cut taken while a 2-cut remains can leave a parallel
    // pair in a completion, and its digon would split off as a spurious dipole.
    // 3-cut splits of a 3-edge-connected graph never create new 2-cuts.
    auto two_end = std::stable_partition(cuts.begin(), cuts.end(), [](const EdgeCut& c) { return c.edges.size() == 2; });
    auto pool_end = two_end == cuts.begin() ? cuts.end() : two_end;
    std::shuffle(cuts.begin(), pool_end, rng);
    int base = add_split(t, node, decompose_along(t.nodes[node].graph, cuts[0].edges));
    split_all(t, base, rng, kind);
    split_all(t, base + 1, rng, kind);
}

// parent element -> child element
inline vector<int> invert(const vector<int>& origin, int parent_size) {
    vector<int> inv(parent_size, -1);
    for (int i = 0; i < static_cast<int>(origin.size()); ++i)
        if (origin[i] >= 0) inv[origin[i]] = i;
    return inv;
}

}  // namespace decomp_detail

inline DecompositionTree canonical_decomposition(const CubicGraph& g, std::uint64_t order_seed = 0) {
    if (!is_two_connected(g)) throw Error(ErrorKind::NotTwoConnected, "graph is not 2-connected");
    DecompositionTree t;
    t.nodes.emplace_back().graph = g;
    std::mt19937_64 rng(order_seed);
    decomp_detail::split_all(t, 0, rng, FactorKind::unclassified);
    return t;
}

struct Reassembled {
    CubicGraph graph;
    vector<int> vertex_map;  // node graph -> reassembled graph
    vector<int> edge_map;
};

inline Reassembled reassemble(const DecompositionTree& t, int node = 0) {
    const auto& nd = t.nodes[node];
    if (nd.leaf()) {
        Reassembled r{nd.graph, vector<int>(nd.graph.order()), vector<int>(nd.graph.size())};
        std::iota(r.vertex_map.begin(), r.vertex_map.end(), 0);
        std::iota(r.edge_map.begin(), r.edge_map.end(), 0);
        return r;
    }
    const auto& ln = t.nodes[nd.children[0]];
    const auto& rn = t.nodes[nd.children[1]];
    auto L = reassemble(t, nd.children[0]);
    auto R = reassemble(t, nd.children[1]);
    // The spec refers to child node ids; translate it to the reassembled children.
    SumSpec spec = nd.spec;
    if (spec.kind == SumKind::sum2) {
        int e = L.edge_map[spec.left], f = R.edge_map[spec.right];
        spec.left = e;
        spec.right = f;
        spec.gluing.assign(2, 0);
        for (int i = 0; i < 2; ++i) {
            int want_l = L.vertex_map[ln.graph.ends(nd.spec.left)[i]];
            int want_r = R.vertex_map[rn.graph.ends(nd.spec.right)[nd.spec.gluing[i]]];
            int li = L.graph.ends(e)[0] == want_l ? 0 : 1;
            spec.gluing[li] = R.graph.ends(f)[0] == want_r ? 0 : 1;
        }
    } else {
        int u = L.vertex_map[spec.left], v = R.vertex_map[spec.right];
        auto pos = [](const CubicGraph& g, int x, int e) {
            auto inc = g.incident(x);
            return static_cast<int>(std::find(inc.begin(), inc.end(), e) - inc.begin());
        };
        spec.left = u;
        spec.right = v;
        spec.gluing.assign(3, 0);
        for (int i = 0; i < 3; ++i) {
            int el = L.edge_map[CubicGraph::edge_of(ln.graph.darts(nd.spec.left)[i])];
            int er = R.edge_map[CubicGraph::edge_of(rn.graph.darts(nd.spec.right)[nd.spec.gluing[i]])];
            spec.gluing[pos(L.graph, u, el)] = pos(R.graph, v, er);
        }
    }
    auto s = apply_sum(L.graph, R.graph, spec);
    Reassembled out;
    out.graph = s.graph;
    out.vertex_map.assign(nd.graph.order(), -1);
    out.edge_map.assign(nd.graph.size(), -1);
    for (int side = 0; side < 2; ++side) {
        const auto& cn = side == 0 ? ln : rn;
        const auto& cr = side == 0 ? L : R;
        const auto& vm = side == 0 ? s.left_vertex : s.right_vertex;
        const auto& em = side == 0 ? s.left_edge : s.right_edge;
        for (int x = 0; x < cn.graph.order(); ++x)
            if (cn.vertex_origin[x] >= 0) out.vertex_map[cn.vertex_origin[x]] = vm[cr.vertex_map[x]];
        for (int e = 0; e < cn.graph.size(); ++e)
            if (cn.edge_origin[e] >= 0) out.edge_map[cn.edge_origin[e]] = em[cr.edge_map[e]];
    }
    for (int e : nd.cut) {
        int a = out.vertex_map[nd.graph.ends(e)[0]], b = out.vertex_map[nd.graph.ends(e)[1]];
        for (int c : s.cut) {
            auto [x, y] = s.graph.ends(c);
            if ((x == a && y == b) || (x == b && y == a)) out.edge_map[e] = c;
        }
    }
    return out;
}

// Vertex of the root graph that a node vertex descends from, -1 for completion vertices.
inline int root_vertex(const DecompositionTree& t, int node, int v) {
    while (node > 0 && v >= 0) {
        v = t.nodes[node].vertex_origin[v];
        node = t.nodes[node].parent;
    }
    return v;
}

inline bool vertex_partition_ok(const DecompositionTree& t) {
    vector<int> hits(t.nodes[0].graph.order(), 0);
    for (int f : t.factors())
        for (int v = 0; v < t.nodes[f].graph.order(); ++v) {
            int r = root_vertex(t, f, v);
            if (r >= 0) ++hits[r];
        }
    return std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
}

// Multisets of graphs compared up to isomorphism, bucketed by invariants first.
inline bool same_multiset(const vector<CubicGraph>& a, const vector<CubicGraph>& b) {
    if (a.size() != b.size()) return false;
    std::map<vector<long>, vector<const CubicGraph*>> pool;
    for (auto& g : b) pool[graph_invariant(g)].push_back(&g);
    for (auto& g : a) {
        auto it = pool.find(graph_invariant(g));
        if (it == pool.end()) return false;
        auto& bucket = it->second;
        auto m = std::find_if(bucket.begin(), bucket.end(), [&](const CubicGraph* h) { return isomorphic(g, *h).has_value(); });
        if (m == bucket.end()) return false;
        bucket.erase(m);
    }
    return true;
}

// ---- defect 3 ----

// Peels colourable pieces off the host holding a hexagonal core: 2-cuts first,
// then 3-cuts avoiding the core, largest piece first. Pieces are decomposed
// canonically; the host is kept whole.
inline DecompositionTree defect3_decomposition(const CubicGraph& g) {
    if (!is_two_connected(g)) throw Error(ErrorKind::NotTwoConnected, "graph is not 2-connected");
    if (!has_defect_three(g)) throw Error(ErrorKind::DefectNotThree, "graph does not have defect 3");
    DecompositionTree t;
    t.nodes.emplace_back().graph = g;
    // Prefer a core sharing an edge with a triangle; such a triangle stays in the host.
    std::optional<HexagonalWitness> chosen;
    auto tris = cycles_of_length(g, 3);
    if (!tris.empty()) {
        vector<char> tri_edge(g.size(), 0);
        for (auto& tr : tris)
            for (int e : cycle_edges(g, tr.vertices)) tri_edge[e] = 1;
        for (auto& c : induced_cycles_of_length(g, 6)) {
            auto ce = cycle_edges(g, c.vertices);
            if (std::none_of(ce.begin(), ce.end(), [&](int e) { return tri_edge[e]; })) continue;
            if ((chosen = verify_hexagonal_core(g, c.vertices))) break;
        }
    }
    auto hex = chosen ? *chosen : hexagonal_cores(g, true)[0];
    auto arr = array_from_hexagonal_witness(g, hex);
    vector<int> mult = arr.multiplicity(g.size());
    vector<int> hexagon = hex.cycle;
    std::mt19937_64 rng(0);
    struct Pending {
        SumKind kind;
        int element;  // in the current host
        int piece;
        int piece_element;
    };
    vector<Pending> pending;
    int host = 0;
    bool cuts_ok = true, pieces_ok = true;
    std::string cut_detail, piece_detail;
    for (int phase = 2; phase <= 3; ++phase) {
        while (true) {
            const CubicGraph h = t.nodes[host].graph;
            vector<char> on_core(h.order(), 0);
            for (int v : hexagon) on_core[v] = 1;
            vector<char> core_edge(h.size(), 0);
            for (int e : cycle_edges(h, hexagon)) core_edge[e] = 1;
            const EdgeCut* best = nullptr;
            auto cuts = edge_cuts(h, phase, true);
            for (auto& c : cuts) {
                int touch = 0;
                for (int e : c.edges) touch += core_edge[e];
                if (touch > 0) {
                    if (phase == 2 || touch != 2) {
                        cuts_ok = false;
                        cut_detail += "cut meets core in " + std::to_string(touch) + " edges; ";
                    }
                    for (int e : c.edges)
                        if (core_edge[e] && mult[e] != 2) {
                            cuts_ok = false;
                            cut_detail += "cut meets core in an edge of multiplicity " + std::to_string(mult[e]) + "; ";
                        }
                    continue;
                }
                const auto& piece_side = on_core[c.side_a[0]] ? c.side_b : c.side_a;
                const auto& best_side = !best ? piece_side : on_core[best->side_a[0]] ? best->side_b : best->side_a;
                if (!best || piece_side.size() > best_side.size()) best = &c;
            }
            if (!best) break;
            auto s = decompose_along(h, best->edges);
            int base = decomp_detail::add_split(t, host, s);
            // the side holding the core becomes the new host
            int host_side = on_core[best->side_a[0]] ? 0 : 1;
            int new_host = base + host_side, piece = base + 1 - host_side;
            const SumSpec spec = t.nodes[host].spec;
            pending.push_back({spec.kind, host_side == 0 ? spec.left : spec.right, piece,
                               host_side == 0 ? spec.right : spec.left});
            auto vinv = decomp_detail::invert(t.nodes[new_host].vertex_origin, h.order());
            auto einv = decomp_detail::invert(t.nodes[new_host].edge_origin, h.size());
            for (int i = 0; i < static_cast<int>(best->edges.size()); ++i)
                einv[best->edges[i]] = s.cut_image[host_side][i];
            for (int& v : hexagon) v = vinv[v];
            const auto& hc = t.nodes[new_host].graph;
            vector<int> nm(hc.size(), 1);
            for (int e = 0; e < h.size(); ++e)
                if (einv[e] >= 0) nm[einv[e]] = mult[e];
            mult = std::move(nm);
            for (auto& p : pending) {
                if (&p == &pending.back() || p.element < 0) continue;
                p.element = p.kind == SumKind::sum2 ? einv[p.element] : vinv[p.element];
            }
            if (!is_colourable(t.nodes[piece].graph)) {
                pieces_ok = false;
                piece_detail += "piece " + std::to_string(piece) + " is not colourable; ";
            }
            decomp_detail::split_all(t, piece, rng, FactorKind::colourable);
            host = new_host;
        }
    }
    t.host = host;
    t.nodes[host].kind = FactorKind::defect_host;
    t.host_hexagon = hexagon;
    for (auto& p : pending) t.peels.push_back(Peel{p.kind, p.element, p.piece, p.piece_element});
    const CubicGraph& h = t.nodes[host].graph;
    t.audit.push_back({"used 2-cuts avoid the core, 3-cuts meet it in two doubly covered edges", cuts_ok, cut_detail});
    t.audit.push_back({"peeled pieces are colourable", pieces_ok, piece_detail});
    bool host_df3 = has_defect_three(h) && verify_hexagonal_core(h, hexagon).has_value();
    t.audit.push_back({"host has defect 3 with the inherited hexagonal core", host_df3, ""});
    bool others_ok = true;
    for (int f : t.factors()) {
        if (f == host) continue;
        const auto& fg = t.nodes[f].graph;
        if (!is_colourable(fg) || !is_two_connected(fg) || !small_independent_cuts(fg).empty()) others_ok = false;
    }
    t.audit.push_back({"other factors are colourable and cyclically 4-edge-connected", others_ok, ""});
    bool tri_ok = true;
    std::string tri_detail;
    if (!small_independent_cuts(h).empty()) {
        tri_ok = false;
        vector<char> core_edge(h.size(), 0);
        for (int e : cycle_edges(h, hexagon)) core_edge[e] = 1;
        for (auto& tr : cycles_of_length(h, 3)) {
            bool meets = false;
            for (int e : cycle_edges(h, tr.vertices)) meets = meets || core_edge[e];
            if (!meets) continue;
            auto q = contract(h, tr.vertices).graph;
            if (is_two_connected(q) && small_independent_cuts(q).empty()) {
                tri_ok = true;
                t.host_triangle = tr.vertices;
                break;
            }
        }
        tri_detail = tri_ok ? "host contains a triangle meeting the core" : "no suitable triangle";
    }
    t.audit.push_back({"host is cyclically 4-edge-connected or reduces to it at a core triangle", tri_ok, tri_detail});
    if (!all_pass(t.audit)) {
        std::string msg;
        for (auto& a : t.audit)
            if (!a.pass) msg += a.name + ": " + a.detail + " ";
        throw Error(ErrorKind::VerificationFailed, msg);
    }
    return t;
}

// ---- JSON ----

inline nlohmann::json to_json(const SumSpec& s) {
    return {{"kind", s.kind == SumKind::sum2 ? "sum2" : "sum3"}, {"left", s.left}, {"right", s.right}, {"gluing", s.gluing}};
}

inline SumSpec sum_spec_from_json(const nlohmann::json& j) {
    SumSpec s;
    std::string k = j.at("kind").get<std::string>();
    if (k != "sum2" && k != "sum3") throw Error(ErrorKind::SchemaError, "unknown sum kind " + k);
    s.kind = k == "sum2" ? SumKind::sum2 : SumKind::sum3;
    s.left = j.at("left").get<int>();
    s.right = j.at("right").get<int>();
    s.gluing = j.at("gluing").get<vector<int>>();
    return s;
}

inline nlohmann::json to_json(const DecompositionTree& t) {
    nlohmann::json nodes = nlohmann::json::array();
    for (auto& n : t.nodes) {
        nlohmann::json j{{"graph", to_jsonmg(n.graph)}, {"parent", n.parent}, {"kind", factor_kind_name(n.kind)}};
        if (n.parent >= 0) {
            j["vertex_origin"] = n.vertex_origin;
            j["edge_origin"] = n.edge_origin;
        }
        if (!n.leaf()) {
            j["children"] = n.children;
            j["cut"] = n.cut;
            j["spec"] = to_json(n.spec);
        }
        nodes.push_back(std::move(j));
    }
    nlohmann::json out{{"nodes", nodes}, {"factors", t.factors()}};
    if (t.host >= 0) {
        out["host"] = t.host;
        out["host_hexagon"] = t.host_hexagon;
        nlohmann::json peels = nlohmann::json::array();
        for (auto& p : t.peels)
            peels.push_back({{"kind", p.kind == SumKind::sum2 ? "sum2" : "sum3"},
                             {"host_element", p.host_element},
                             {"piece", p.piece},
                             {"piece_element", p.piece_element}});
        out["peels"] = peels;
        if (!t.host_triangle.empty()) out["host_triangle"] = t.host_triangle;
    }
    return out;
}

inline DecompositionTree decomposition_from_json(const nlohmann::json& j) {
    DecompositionTree t;
    try {
        for (auto& jn : j.at("nodes")) {
            DecompNode n;
            n.graph = from_jsonmg(jn.at("graph"));
            n.parent = jn.at("parent").get<int>();
            if (n.parent >= 0) {
                n.vertex_origin = jn.at("vertex_origin").get<vector<int>>();
                n.edge_origin = jn.at("edge_origin").get<vector<int>>();
            }
            if (jn.contains("children")) {
                n.children = jn.at("children").get<array<int, 2>>();
                n.cut = jn.at("cut").get<vector<int>>();
                n.spec = sum_spec_from_json(jn.at("spec"));
            }
            std::string k = jn.value("kind", "unclassified");
            n.kind = k == "colourable" ? FactorKind::colourable : k == "defect_host" ? FactorKind::defect_host : FactorKind::unclassified;
            t.nodes.push_back(std::move(n));
        }
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::SchemaError, ex.what());
    }
    const int sz = static_cast<int>(t.nodes.size());
    if (sz == 0) throw Error(ErrorKind::SchemaError, "empty decomposition");
    for (int i = 0; i < sz; ++i) {
        const auto& n = t.nodes[i];
        if (i > 0 && (n.parent < 0 || n.parent >= i)) throw Error(ErrorKind::SchemaError, "bad parent index");
        if (n.parent >= 0 && (static_cast<int>(n.vertex_origin.size()) != n.graph.order() ||
                              static_cast<int>(n.edge_origin.size()) != n.graph.size()))
            throw Error(ErrorKind::SchemaError, "origin maps do not match the graph");
        for (int c : n.children)
            if (!n.leaf() && (c <= i || c >= sz || t.nodes[c].parent != i)) throw Error(ErrorKind::SchemaError, "bad child index");
    }
    t.host = j.value("host", -1);
    return t;
}

}  // namespace snarklab
