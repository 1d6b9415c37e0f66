#pragma once

#include "snarklab/construction.hpp"

namespace snarklab {

// A cycle here is an even subgraph, kept as an edge set.
struct CycleCover {
    vector<EdgeMask> cycles;

    vector<int> edge_weight(int size) const {
        vector<int> w(size, 0);
        for (auto& c : cycles)
            for (int e = 0; e < size; ++e) w[e] += c[e];
        return w;
    }
    int length() const {
        int l = 0;
        for (auto& c : cycles) l += static_cast<int>(c.count());
        return l;
    }
};

struct CoverReport {
    int length = 0;
    int m = 0;
    vector<int> vertex_weight;
    bool four_thirds = false;  // all weights 4: length 4m/3
    bool plus_one = false;     // all weights 4 except one 6: length 4m/3 + 1
    int heavy_vertex = -1;     // the weight-6 vertex when plus_one holds
};

inline bool is_even_subgraph(const CubicGraph& g, const EdgeMask& c) {
    for (int v = 0; v < g.order(); ++v) {
        int d = 0;
        for (int dd : g.darts(v)) d += c[CubicGraph::edge_of(dd)];
        if (d % 2) return false;
    }
    return true;
}

inline CoverReport verify_cover(const CubicGraph& g, const CycleCover& c) {
    for (auto& cyc : c.cycles) {
        for (int e = g.size(); e < kMaxEdges; ++e)
            if (cyc[e]) throw Error(ErrorKind::NotACycle, "cycle uses an edge outside the graph");
        if (!is_even_subgraph(g, cyc)) throw Error(ErrorKind::NotACycle, "cycle has a vertex of odd degree");
    }
    auto w = c.edge_weight(g.size());
    for (int e = 0; e < g.size(); ++e)
        if (w[e] == 0) throw Error(ErrorKind::Uncovered, "edge " + std::to_string(e) + " is not covered");
    CoverReport r;
    r.length = c.length();
    r.m = g.size();
    r.vertex_weight.assign(g.order(), 0);
    for (int v = 0; v < g.order(); ++v)
        for (int d : g.darts(v)) r.vertex_weight[v] += w[CubicGraph::edge_of(d)];
    int fours = 0, sixes = 0;
    for (int v = 0; v < g.order(); ++v) {
        if (r.vertex_weight[v] == 4) ++fours;
        if (r.vertex_weight[v] == 6) {
            ++sixes;
            r.heavy_vertex = v;
        }
    }
    r.four_thirds = fours == g.order();
    r.plus_one = sixes == 1 && fours == g.order() - 1;
    if (!r.plus_one) r.heavy_vertex = -1;
    return r;
}

// ---- from a perfect-matching 4-cover ----

// With M the doubly covered matching, each P_i + M is a union of even circuits
// and every vertex lies on exactly two of the four.
inline CycleCover cover_from_4cover(const CubicGraph& g, const PMCover& p) {
    if (p.matchings.size() != 4 || !verify_pm_cover(g, p))
        throw Error(ErrorKind::NotFourCover, "not a perfect-matching 4-cover");
    EdgeMask m = p.doubly(g.size());
    CycleCover c;
    for (auto& pi : p.matchings) {
        EdgeMask x = pi ^ m;
        if (x.any()) c.cycles.push_back(x);
    }
    auto rep = verify_cover(g, c);
    if (!rep.four_thirds) throw Error(ErrorKind::VerificationFailed, "cover from a 4-cover is not of length 4m/3");
    return c;
}

// Two bi-coloured 2-factors of a colourable graph.
inline CycleCover cover_from_colouring(const CubicGraph& g, const EdgeColouring& col) {
    CycleCover c;
    for (auto [x, y] : {std::pair{1, 2}, std::pair{1, 3}}) {
        EdgeMask m;
        for (int e = 0; e < g.size(); ++e)
            if (col[e] == x || col[e] == y) m.set(e);
        c.cycles.push_back(m);
    }
    return c;
}

// ---- Petersen ----

// Three pentagons through v0 plus the hexagon on the vertices at distance two.
inline CycleCover petersen_cover(const CubicGraph& pg, int v0) {
    vector<int> dist(pg.order(), -1);
    dist[v0] = 0;
    for (int w : pg.neighbours(v0)) dist[w] = 1;
    for (int v = 0; v < pg.order(); ++v)
        if (dist[v] == 1)
            for (int w : pg.neighbours(v))
                if (dist[w] < 0) dist[w] = 2;
    EdgeMask hexagon;
    for (int e = 0; e < pg.size(); ++e)
        if (dist[pg.ends(e)[0]] == 2 && dist[pg.ends(e)[1]] == 2) hexagon.set(e);
    vector<EdgeMask> pent;
    for (auto& c : cycles_of_length(pg, 5))
        if (std::find(c.vertices.begin(), c.vertices.end(), v0) != c.vertices.end()) pent.push_back(list_to_mask(c.edges));
    const int k = static_cast<int>(pent.size());
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            for (int d = b + 1; d < k; ++d) {
                CycleCover c{{pent[a], pent[b], pent[d], hexagon}};
                try {
                    auto r = verify_cover(pg, c);
                    if (r.plus_one && r.heavy_vertex == v0) return c;
                } catch (const Error&) {
                }
            }
    throw Error(ErrorKind::VerificationFailed, "no pentagon cover through v0");
}

// ---- covers for recipe graphs ----

namespace cover_detail {

inline EdgeMask two_factor(const CubicGraph& g, const EdgeColouring& col, int x, int y) {
    EdgeMask m;
    for (int e = 0; e < g.size(); ++e)
        if (col[e] == x || col[e] == y) m.set(e);
    return m;
}

inline EdgeMask map_edges(const EdgeMask& c, int size, const vector<int>& map) {
    EdgeMask out;
    for (int e = 0; e < size; ++e)
        if (c[e] && map[e] >= 0) out.set(map[e]);
    return out;
}

}  // namespace cover_detail

// Replays the recipe, merging the cover of each host with two bi-coloured
// 2-factors of the inserted piece. v0 keeps weight 6; every other vertex has 4.
inline CycleCover cover_for_build(const BuildResult& b) {
    using cover_detail::map_edges;
    using cover_detail::two_factor;
    auto base = petersen_with_core();
    CubicGraph g = base.graph;
    CycleCover cover = petersen_cover(g, base.v0);
    for (const auto& st : b.steps) {
        const auto& s = st.sum;
        const auto& piece = st.piece;
        const auto& col = st.piece_colouring;
        const int pm = piece.size();
        CycleCover next;
        vector<int> hw = cover.edge_weight(g.size());
        if (st.kind == OpKind::O1) {
            int e = st.host_element, h = st.spec.right;
            int c = col[h];
            int x = c == 1 ? 2 : 1, y = 6 - c - x;
            // one piece cycle through h per host cycle through e
            vector<EdgeMask> pc = hw[e] == 1 ? vector<EdgeMask>{two_factor(piece, col, c, x), two_factor(piece, col, x, y)}
                                             : vector<EdgeMask>{two_factor(piece, col, c, x), two_factor(piece, col, c, y)};
            size_t used = 0;
            for (auto& d : cover.cycles) {
                EdgeMask nd = map_edges(d, g.size(), s.left_edge);
                if (d[e]) {
                    if (used == pc.size() || !pc[used][h])
                        throw Error(ErrorKind::VerificationFailed, "host edge weight does not match the piece cycles");
                    nd |= map_edges(pc[used++], pm, s.right_edge);
                    for (int cut : s.cut) nd.set(cut);
                }
                next.cycles.push_back(nd);
            }
            for (; used < pc.size(); ++used) next.cycles.push_back(map_edges(pc[used], pm, s.right_edge));
        } else {
            int u = st.host_element;
            auto du = g.darts(u);
            auto dv = piece.darts(st.spec.right);
            array<int, 3> eu{}, cc{};
            int heavy = -1;
            for (int i = 0; i < 3; ++i) {
                eu[i] = CubicGraph::edge_of(du[i]);
                cc[i] = col[CubicGraph::edge_of(dv[st.spec.gluing[i]])];
                if (hw[eu[i]] == 2) {
                    if (heavy >= 0) throw Error(ErrorKind::VerificationFailed, "substituted vertex has weight above 4");
                    heavy = i;
                }
            }
            if (heavy < 0) throw Error(ErrorKind::VerificationFailed, "substituted vertex has no edge of weight 2");
            for (auto& d : cover.cycles) {
                EdgeMask nd = map_edges(d, g.size(), s.left_edge);
                if (d[eu[heavy]]) {
                    int through = -1;
                    for (int i = 0; i < 3; ++i)
                        if (i != heavy && d[eu[i]]) through = i;
                    if (through < 0) throw Error(ErrorKind::VerificationFailed, "cycle through the substituted vertex is broken");
                    nd |= map_edges(two_factor(piece, col, cc[heavy], cc[through]), pm, s.right_edge);
                    nd.set(s.cut[heavy]);
                    nd.set(s.cut[through]);
                }
                next.cycles.push_back(nd);
            }
        }
        g = s.graph;
        cover = std::move(next);
        auto rep = verify_cover(g, cover);
        if (!rep.plus_one) throw Error(ErrorKind::VerificationFailed, "merged cover lost the weight profile");
    }
    return cover;
}

inline CycleCover cover_for_recipe(const CubicGraph& g, const Recipe& r) {
    auto b = apply_recipe(r);
    auto c = cover_for_build(b);
    if (b.graph == g) return c;
    auto f = isomorphic(b.graph, g);
    if (!f) throw Error(ErrorKind::RecipeMismatch, "graph is not the output of the recipe");
    auto em = edge_map_from_vertex_map(b.graph, g, *f);
    CycleCover out;
    for (auto& cyc : c.cycles) out.cycles.push_back(cover_detail::map_edges(cyc, b.graph.size(), em));
    verify_cover(g, out);
    return out;
}

// ---- heavy pentagons ----

// Inflates a vertex of a heavy pentagon, covers the inflated graph from a
// 4-cover, and contracts the triangle back.
inline std::optional<CycleCover> cover_via_heavy_pentagon(const CubicGraph& g) {
    auto hp = heavy_pentagons(g);
    if (hp.empty()) return std::nullopt;
    int v = hp[0].pentagon.vertices[0];
    auto inf = inflate_vertex(g, v);
    auto p = find_4cover(inf.graph);
    if (!p) throw Error(ErrorKind::VerificationFailed, "inflated graph has no 4-cover");
    auto big = cover_from_4cover(inf.graph, *p);
    EdgeMask tri;
    for (int e : inf.triangle_edges) tri.set(e);
    for (auto& c : big.cycles)
        if ((c & tri) == tri) throw Error(ErrorKind::VerificationFailed, "a cycle runs around the inflated triangle");
    auto con = contract(inf.graph, {inf.triangle[0], inf.triangle[1], inf.triangle[2]});
    CycleCover out;
    for (auto& c : big.cycles) {
        auto m = cover_detail::map_edges(c, inf.graph.size(), con.edge_map);
        if (m.any()) out.cycles.push_back(m);
    }
    // contraction may renumber; bring the cover back to the ids of g
    auto f = isomorphic(con.graph, g);
    if (!f) throw Error(ErrorKind::VerificationFailed, "contraction does not restore the graph");
    auto em = edge_map_from_vertex_map(con.graph, g, *f);
    for (auto& c : out.cycles) c = cover_detail::map_edges(c, con.graph.size(), em);
    auto rep = verify_cover(g, out);
    if (3 * rep.length > 4 * g.size() + 3) throw Error(ErrorKind::VerificationFailed, "cover exceeds 4m/3 + 1");
    return out;
}

// ---- exact shortest cycle cover ----

// All circuits, from the cycle space spanned by fundamental cycles.
inline vector<EdgeMask> circuits(const CubicGraph& g) {
    const int n = g.order(), m = g.size();
    vector<int> parent_edge(n, -1), depth(n, -1);
    vector<char> tree(m, 0);
    for (int s = 0; s < n; ++s) {
        if (depth[s] >= 0) continue;
        depth[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int d : g.darts(v)) {
                int w = g.head(d), e = CubicGraph::edge_of(d);
                if (depth[w] >= 0) continue;
                depth[w] = depth[v] + 1;
                parent_edge[w] = e;
                tree[e] = 1;
                q.push(w);
            }
        }
    }
    vector<EdgeMask> basis;
    for (int e = 0; e < m; ++e) {
        if (tree[e]) continue;
        EdgeMask c;
        c.set(e);
        int a = g.ends(e)[0], b = g.ends(e)[1];
        while (a != b) {
            if (depth[a] < depth[b]) std::swap(a, b);
            c.flip(parent_edge[a]);
            a = g.other(parent_edge[a], a);
        }
        basis.push_back(c);
    }
    const int dim = static_cast<int>(basis.size());
    if (dim > 24) throw Error(ErrorKind::TooLarge, "cycle space too large to enumerate");
    vector<EdgeMask> out;
    EdgeMask cur;
    for (std::uint32_t code = 1; code < (1u << dim); ++code) {
        // Gray code walk
        int bit = __builtin_ctz(code);
        cur ^= basis[bit];
        vector<int> deg(n, 0);
        int start = -1;
        bool ok = true;
        for (int e = 0; e < m && ok; ++e) {
            if (!cur[e]) continue;
            auto [a, b] = g.ends(e);
            ++deg[a];
            ++deg[b];
            start = a;
        }
        for (int v = 0; v < n; ++v)
            if (deg[v] > 2) ok = false;
        if (!ok) continue;
        // connected with every degree 2: walk it once
        int len = 0, prev = -1, v = start;
        do {
            int next_e = -1;
            for (int d : g.darts(v)) {
                int e = CubicGraph::edge_of(d);
                if (cur[e] && e != prev) {
                    next_e = e;
                    break;
                }
            }
            if (next_e < 0) break;
            prev = next_e;
            v = g.other(next_e, v);
            ++len;
        } while (v != start && len <= m);
        if (v == start && len == static_cast<int>(cur.count()) && len >= 1) out.push_back(cur);
    }
    return out;
}

// Iterative deepening from ceil(4m/3); a vertex whose edges are not all covered
// yet needs at least two more units of weight.
inline int exact_scc(const CubicGraph& g, int vertex_limit = 14, CycleCover* best = nullptr) {
    if (g.order() > vertex_limit) throw Error(ErrorKind::TooLarge, "exact scc is limited to small graphs");
    require_bridgeless(g);
    auto circ = circuits(g);
    const int m = g.size(), n = g.order();
    vector<vector<int>> through(m);
    for (int i = 0; i < static_cast<int>(circ.size()); ++i)
        for (int e = 0; e < m; ++e)
            if (circ[i][e]) through[e].push_back(i);
    vector<int> w(m, 0), vw(n, 0);
    vector<int> pick;
    auto bound = [&]() {
        int s = 0;
        for (int v = 0; v < n; ++v) {
            bool open = false;
            for (int d : g.darts(v)) open = open || w[CubicGraph::edge_of(d)] == 0;
            s += open ? std::max(vw[v] + 2, 4) : vw[v];
        }
        return s / 2;
    };
    int target = 0;
    auto rec = [&](auto&& self, int len) -> bool {
        tick();
        int low = -1;
        for (int e = 0; e < m; ++e)
            if (!w[e]) {
                low = e;
                break;
            }
        if (low < 0) return true;
        if (std::max(len, bound()) > target) return false;
        for (int c : through[low]) {
            int cl = static_cast<int>(circ[c].count());
            if (len + cl > target) continue;
            for (int e = 0; e < m; ++e)
                if (circ[c][e]) {
                    ++w[e];
                    vw[g.ends(e)[0]]++;
                    vw[g.ends(e)[1]]++;
                }
            pick.push_back(c);
            if (self(self, len + cl)) return true;
            pick.pop_back();
            for (int e = 0; e < m; ++e)
                if (circ[c][e]) {
                    --w[e];
                    vw[g.ends(e)[0]]--;
                    vw[g.ends(e)[1]]--;
                }
        }
        return false;
    };
    for (target = (4 * m + 2) / 3;; ++target) {
        pick.clear();
        std::fill(w.begin(), w.end(), 0);
        std::fill(vw.begin(), vw.end(), 0);
        if (rec(rec, 0)) break;
    }
    if (best) {
        best->cycles.clear();
        for (int c : pick) best->cycles.push_back(circ[c]);
    }
    return target;
}

// ---- JSON ----

inline nlohmann::json to_json(const CubicGraph& g, const CycleCover& c) {
    nlohmann::json cyc = nlohmann::json::array();
    for (auto& x : c.cycles) cyc.push_back(mask_to_list(x, g.size()));
    return {{"cycles", cyc}, {"length", c.length()}, {"m", g.size()}};
}

inline CycleCover cover_from_json(const nlohmann::json& j) {
    CycleCover c;
    try {
        for (auto& x : j.at("cycles")) c.cycles.push_back(list_to_mask(x.get<vector<int>>()));
    } catch (const nlohmann::json::exception& ex) {
        throw Error(ErrorKind::SchemaError, ex.what());
    } catch (const std::out_of_range&) {
        throw Error(ErrorKind::SchemaError, "edge id out of range");
    }
    return c;
}

}  // namespace snarklab
