#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <numeric>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "snarklab/error.hpp"

namespace snarklab {

using std::array;
using std::vector;

// Searches keep edge sets in fixed-width bitsets.
constexpr int kMaxEdges = 256;
using EdgeMask = std::bitset<kMaxEdges>;

struct Dart {
    int id;
    int vertex;
    int edge;
    int twin;
};

// Edge e owns darts 2e (at ends[e][0]) and 2e+1 (at ends[e][1]).
class CubicGraph {
public:
    CubicGraph() = default;

    CubicGraph(int n, vector<array<int, 2>> edges) : n_(n), ends_(std::move(edges)), vd_(n) {
        if (n < 0) throw Error(ErrorKind::MalformedEncoding, "negative order");
        vector<int> deg(n, 0);
        for (int e = 0; e < size(); ++e) {
            for (int s = 0; s < 2; ++s) {
                int v = ends_[e][s];
                if (v < 0 || v >= n) throw Error(ErrorKind::MalformedEncoding, "vertex id out of range");
                if (deg[v] >= 3) throw Error(ErrorKind::NotCubic, "vertex " + std::to_string(v) + " has degree > 3");
                vd_[v][deg[v]++] = 2 * e + s;
            }
        }
        for (int v = 0; v < n; ++v)
            if (deg[v] != 3) throw Error(ErrorKind::NotCubic, "vertex " + std::to_string(v) + " has degree " + std::to_string(deg[v]));
    }

    int order() const { return n_; }
    int size() const { return static_cast<int>(ends_.size()); }
    const vector<array<int, 2>>& edges() const { return ends_; }
    const array<int, 2>& ends(int e) const { return ends_[e]; }
    int other(int e, int v) const { return ends_[e][0] == v ? ends_[e][1] : ends_[e][0]; }
    bool is_loop(int e) const { return ends_[e][0] == ends_[e][1]; }

    const array<int, 3>& darts(int v) const { return vd_[v]; }
    static int edge_of(int d) { return d >> 1; }
    static int twin(int d) { return d ^ 1; }
    int vertex_of(int d) const { return ends_[d >> 1][d & 1]; }
    Dart dart(int d) const { return Dart{d, vertex_of(d), d >> 1, d ^ 1}; }
    int head(int d) const { return vertex_of(d ^ 1); }

    array<int, 3> incident(int v) const {
        return {vd_[v][0] >> 1, vd_[v][1] >> 1, vd_[v][2] >> 1};
    }
    array<int, 3> neighbours(int v) const {
        return {head(vd_[v][0]), head(vd_[v][1]), head(vd_[v][2])};
    }
    int multiplicity(int u, int v) const {
        int c = 0;
        for (int d : vd_[u])
            if (head(d) == v) ++c;
        return u == v ? c / 2 : c;
    }
    int edge_between(int u, int v) const {
        int best = -1;
        for (int d : vd_[u])
            if (head(d) == v && (best < 0 || (d >> 1) < best)) best = d >> 1;
        return best;
    }
    bool adjacent_edges(int e, int f) const {
        for (int a : ends_[e])
            for (int b : ends_[f])
                if (a == b) return true;
        return false;
    }

    bool operator==(const CubicGraph& o) const { return n_ == o.n_ && ends_ == o.ends_; }

private:
    int n_ = 0;
    vector<array<int, 2>> ends_;
    vector<array<int, 3>> vd_;
};

// Subcubic multigraph used for deleted and pendant-augmented subgraphs.
struct Multigraph {
    int n = 0;
    vector<array<int, 2>> edges;
};

inline Multigraph to_multigraph(const CubicGraph& g) { return Multigraph{g.order(), g.edges()}; }

inline vector<int> mask_to_list(const EdgeMask& m, int size) {
    vector<int> out;
    for (int e = 0; e < size; ++e)
        if (m[e]) out.push_back(e);
    return out;
}

inline EdgeMask list_to_mask(const vector<int>& l) {
    EdgeMask m;
    for (int e : l) m.set(e);
    return m;
}

inline void require_searchable(const CubicGraph& g) {
    if (g.size() > kMaxEdges) throw Error(ErrorKind::TooLarge, "graph exceeds search edge limit");
}

// ---- connectivity ----

class UnionFind {
public:
    explicit UnionFind(int n) : p_(n) { std::iota(p_.begin(), p_.end(), 0); }
    int find(int x) {
        while (p_[x] != x) x = p_[x] = p_[p_[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return false;
        p_[b] = a;
        return true;
    }

private:
    vector<int> p_;
};

// Component id per vertex over the edges whose flag in `skip` is false.
inline vector<int> component_labels(int n, const vector<array<int, 2>>& edges, const vector<char>* skip, int* count) {
    UnionFind uf(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e)
        if (!skip || !(*skip)[e]) uf.unite(edges[e][0], edges[e][1]);
    vector<int> label(n, -1), root_label(n, -1);
    int c = 0;
    for (int v = 0; v < n; ++v) {
        int r = uf.find(v);
        if (root_label[r] < 0) root_label[r] = c++;
        label[v] = root_label[r];
    }
    if (count) *count = c;
    return label;
}

inline bool is_connected(const CubicGraph& g) {
    int c = 0;
    component_labels(g.order(), g.edges(), nullptr, &c);
    return c <= 1;
}

inline vector<int> bridges(int n, const vector<array<int, 2>>& edges) {
    vector<vector<array<int, 2>>> adj(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        auto [a, b] = edges[e];
        if (a == b) continue;
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    vector<int> tin(n, -1), low(n, 0), out;
    int timer = 0;
    // iterative DFS keyed by the entering edge so parallel edges are handled
    for (int s = 0; s < n; ++s) {
        if (tin[s] >= 0) continue;
        vector<array<int, 3>> st;  // vertex, parent edge, next index
        st.push_back({s, -1, 0});
        tin[s] = low[s] = timer++;
        while (!st.empty()) {
            auto& [v, pe, idx] = st.back();
            if (idx < static_cast<int>(adj[v].size())) {
                auto [w, e] = adj[v][idx++];
                if (e == pe) continue;
                if (tin[w] >= 0) {
                    low[v] = std::min(low[v], tin[w]);
                } else {
                    tin[w] = low[w] = timer++;
                    st.push_back({w, e, 0});
                }
            } else {
                int vv = v, ee = pe;
                st.pop_back();
                if (!st.empty()) {
                    int p = st.back()[0];
                    low[p] = std::min(low[p], low[vv]);
                    if (low[vv] > tin[p]) out.push_back(ee);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool is_bridgeless(const CubicGraph& g) {
    for (int e = 0; e < g.size(); ++e)
        if (g.is_loop(e)) return false;  // the third edge at a looped vertex is a bridge
    return bridges(g.order(), g.edges()).empty();
}

inline bool is_two_connected(const CubicGraph& g) { return g.order() > 0 && is_connected(g) && is_bridgeless(g); }

inline void require_bridgeless(const CubicGraph& g) {
    if (!is_bridgeless(g)) throw Error(ErrorKind::Bridged, "graph has a bridge");
}

inline bool is_bipartite(int n, const vector<array<int, 2>>& edges, const vector<char>* skip = nullptr,
                         vector<int>* side = nullptr) {
    vector<vector<int>> adj(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        if (skip && (*skip)[e]) continue;
        auto [a, b] = edges[e];
        if (a == b) return false;
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    vector<int> col(n, -1);
    for (int s = 0; s < n; ++s) {
        if (col[s] >= 0) continue;
        col[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : adj[v]) {
                if (col[w] < 0) {
                    col[w] = col[v] ^ 1;
                    q.push(w);
                } else if (col[w] == col[v]) {
                    return false;
                }
            }
        }
    }
    if (side) *side = col;
    return true;
}

inline int girth(const CubicGraph& g) {
    int best = -1;
    for (int e = 0; e < g.size(); ++e)
        if (g.is_loop(e)) return 1;
    for (int u = 0; u < g.order(); ++u)
        for (int v : g.neighbours(u))
            if (v != u && g.multiplicity(u, v) > 1) return 2;
    const int n = g.order();
    vector<int> dist(n), pedge(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        pedge[s] = -1;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int d : g.darts(v)) {
                int e = CubicGraph::edge_of(d), w = g.head(d);
                if (e == pedge[v]) continue;
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    pedge[w] = e;
                    q.push(w);
                } else {
                    int len = dist[v] + dist[w] + 1;
                    if (best < 0 || len < best) best = len;
                }
            }
        }
    }
    if (best < 0) throw Error(ErrorKind::Acyclic, "graph has no circuit");
    return best;
}

// ---- cuts ----

struct EdgeCut {
    vector<int> edges;
    vector<int> side_a;  // smaller side
    vector<int> side_b;
    bool independent = false;
    bool cycle_separating = false;
};

inline vector<int> boundary(const CubicGraph& g, const vector<int>& side) {
    vector<char> in(g.order(), 0);
    for (int v : side) in[v] = 1;
    vector<int> out;
    for (int e = 0; e < g.size(); ++e)
        if (in[g.ends(e)[0]] != in[g.ends(e)[1]]) out.push_back(e);
    return out;
}

inline bool pairwise_independent(const CubicGraph& g, const vector<int>& es) {
    for (size_t i = 0; i < es.size(); ++i) {
        if (g.is_loop(es[i])) return false;
        for (size_t j = i + 1; j < es.size(); ++j)
            if (g.adjacent_edges(es[i], es[j])) return false;
    }
    return true;
}

// Returns the cut if removing `es` leaves exactly two components and every edge crosses.
inline std::optional<EdgeCut> as_cut(const CubicGraph& g, const vector<int>& es) {
    vector<char> skip(g.size(), 0);
    for (int e : es) skip[e] = 1;
    int c = 0;
    auto lab = component_labels(g.order(), g.edges(), &skip, &c);
    if (c != 2) return std::nullopt;
    for (int e : es)
        if (lab[g.ends(e)[0]] == lab[g.ends(e)[1]]) return std::nullopt;
    EdgeCut cut;
    cut.edges = es;
    std::sort(cut.edges.begin(), cut.edges.end());
    for (int v = 0; v < g.order(); ++v) (lab[v] == lab[0] ? cut.side_b : cut.side_a).push_back(v);
    if (cut.side_b.size() < cut.side_a.size()) std::swap(cut.side_a, cut.side_b);
    cut.independent = pairwise_independent(g, cut.edges);
    const int k = static_cast<int>(es.size());
    cut.cycle_separating = static_cast<int>(cut.side_a.size()) >= k && static_cast<int>(cut.side_b.size()) >= k;
    return cut;
}

// All minimal edge cuts with exactly k edges (k = 2 or 3), by brute force over edge subsets.
inline vector<EdgeCut> edge_cuts(const CubicGraph& g, int k, bool independent_only) {
    vector<EdgeCut> out;
    const int m = g.size();
    vector<int> pick;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(pick.size()) == k) {
            if (independent_only && !pairwise_independent(g, pick)) return;
            if (auto c = as_cut(g, pick)) out.push_back(std::move(*c));
            return;
        }
        for (int e = start; e < m; ++e) {
            if (g.is_loop(e)) continue;
            if (independent_only) {
                bool ok = true;
                for (int f : pick)
                    if (g.adjacent_edges(e, f)) ok = false;
                if (!ok) continue;
            }
            pick.push_back(e);
            self(self, e + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

inline vector<EdgeCut> small_independent_cuts(const CubicGraph& g) {
    auto out = edge_cuts(g, 2, true);
    auto three = edge_cuts(g, 3, true);
    out.insert(out.end(), three.begin(), three.end());
    return out;
}

inline bool cyclically_4_edge_connected(const CubicGraph& g) {
    if (!is_two_connected(g)) throw Error(ErrorKind::NotTwoConnected, "graph is not 2-connected");
    return small_independent_cuts(g).empty();
}

// ---- subgraph operations ----

struct ContractResult {
    CubicGraph graph;
    vector<int> vertex_map;  // old vertex -> new vertex
    vector<int> edge_map;    // old edge -> new edge, -1 when contracted away
};

// Contracts every component of G[side] to a single vertex.
inline ContractResult contract(const CubicGraph& g, const vector<int>& side) {
    const int n = g.order();
    vector<char> in(n, 0);
    for (int v : side) in[v] = 1;
    vector<char> skip(g.size(), 0);
    for (int e = 0; e < g.size(); ++e) skip[e] = !(in[g.ends(e)[0]] && in[g.ends(e)[1]]);
    int c = 0;
    auto lab = component_labels(n, g.edges(), &skip, &c);
    vector<int> bsize(n, 0);
    for (int e = 0; e < g.size(); ++e) {
        auto [a, b] = g.ends(e);
        if (in[a] && !(in[b] && lab[a] == lab[b])) ++bsize[lab[a]];
        if (in[b] && !(in[a] && lab[a] == lab[b])) ++bsize[lab[b]];
    }
    ContractResult r;
    r.vertex_map.assign(n, -1);
    vector<int> comp_new(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
        if (!in[v]) {
            r.vertex_map[v] = next++;
        } else {
            if (bsize[lab[v]] != 3)
                throw Error(ErrorKind::NotCubicResult, "contracted component boundary is not 3");
            if (comp_new[lab[v]] < 0) comp_new[lab[v]] = next++;
            r.vertex_map[v] = comp_new[lab[v]];
        }
    }
    vector<array<int, 2>> edges;
    r.edge_map.assign(g.size(), -1);
    for (int e = 0; e < g.size(); ++e) {
        auto [a, b] = g.ends(e);
        if (in[a] && in[b] && lab[a] == lab[b]) continue;
        r.edge_map[e] = static_cast<int>(edges.size());
        edges.push_back({r.vertex_map[a], r.vertex_map[b]});
    }
    r.graph = CubicGraph(next, std::move(edges));
    return r;
}

struct InflateResult {
    CubicGraph graph;
    array<int, 3> triangle;        // triangle vertices; triangle[0] keeps the old id
    array<int, 3> triangle_edges;  // t0t1, t1t2, t2t0
};

inline InflateResult inflate_vertex(const CubicGraph& g, int v) {
    for (int e : g.incident(v))
        if (g.is_loop(e)) throw Error(ErrorKind::LoopAtVertex, "vertex " + std::to_string(v) + " carries a loop");
    const int n = g.order(), m = g.size();
    auto edges = g.edges();
    auto ds = g.darts(v);
    int t1 = n, t2 = n + 1;
    edges[ds[1] >> 1][ds[1] & 1] = t1;
    edges[ds[2] >> 1][ds[2] & 1] = t2;
    edges.push_back({v, t1});
    edges.push_back({t1, t2});
    edges.push_back({t2, v});
    InflateResult r{CubicGraph(n + 2, std::move(edges)), {v, t1, t2}, {m, m + 1, m + 2}};
    return r;
}

// G minus a vertex set; vertex ids are kept and deleted vertices become isolated.
inline Multigraph delete_vertices(const CubicGraph& g, const vector<int>& del, vector<int>* edge_origin = nullptr) {
    vector<char> gone(g.order(), 0);
    for (int v : del) gone[v] = 1;
    Multigraph h{g.order(), {}};
    if (edge_origin) edge_origin->clear();
    for (int e = 0; e < g.size(); ++e) {
        auto [a, b] = g.ends(e);
        if (gone[a] || gone[b]) continue;
        h.edges.push_back({a, b});
        if (edge_origin) edge_origin->push_back(e);
    }
    return h;
}

inline Multigraph delete_edges(const CubicGraph& g, const vector<int>& del, vector<int>* edge_origin = nullptr) {
    vector<char> gone(g.size(), 0);
    for (int e : del) gone[e] = 1;
    Multigraph h{g.order(), {}};
    if (edge_origin) edge_origin->clear();
    for (int e = 0; e < g.size(); ++e) {
        if (gone[e]) continue;
        h.edges.push_back(g.ends(e));
        if (edge_origin) edge_origin->push_back(e);
    }
    return h;
}

// G~e: delete e and smooth both resulting 2-valent vertices. Free circles that appear are dropped.
inline CubicGraph suppress_edge(const CubicGraph& g, int e) {
    if (g.is_loop(e)) throw Error(ErrorKind::LoopEdge, "cannot suppress a loop");
    vector<array<int, 2>> edges = g.edges();
    vector<char> alive(edges.size(), 1), vgone(g.order(), 0);
    alive[e] = 0;
    auto smooth = [&](int x) {
        vector<array<int, 2>> ends;  // (edge, side)
        for (int f = 0; f < static_cast<int>(edges.size()); ++f) {
            if (!alive[f]) continue;
            for (int s = 0; s < 2; ++s)
                if (edges[f][s] == x) ends.push_back({f, s});
        }
        vgone[x] = 1;
        if (ends.size() != 2) return;  // x was already removed with a free circle
        auto [f1, s1] = ends[0];
        auto [f2, s2] = ends[1];
        if (f1 == f2) {  // loop at a 2-valent vertex: a free circle
            alive[f1] = 0;
            return;
        }
        int p = edges[f1][1 - s1], q = edges[f2][1 - s2];
        alive[f1] = alive[f2] = 0;
        edges.push_back({p, q});
        alive.push_back(1);
    };
    smooth(g.ends(e)[0]);
    smooth(g.ends(e)[1]);
    vector<int> id(g.order(), -1);
    int n = 0;
    for (int v = 0; v < g.order(); ++v)
        if (!vgone[v]) id[v] = n++;
    vector<array<int, 2>> out;
    for (size_t f = 0; f < edges.size(); ++f)
        if (alive[f]) out.push_back({id[edges[f][0]], id[edges[f][1]]});
    return CubicGraph(n, std::move(out));
}

// ---- short cycles ----

struct Cycle {
    vector<int> vertices;  // cyclic order
    vector<int> edges;     // edges[i] joins vertices[i] and vertices[i+1]
};

// Circuits of the given length (>= 3), each reported once.
inline vector<Cycle> cycles_of_length(const CubicGraph& g, int len) {
    vector<Cycle> out;
    const int n = g.order();
    vector<char> used(n, 0);
    Cycle cur;
    auto rec = [&](auto&& self, int s, int v) -> void {
        if (static_cast<int>(cur.vertices.size()) == len) {
            for (int d : g.darts(v)) {
                if (g.head(d) != s) continue;
                int e = CubicGraph::edge_of(d);
                if (len == 2 && e == cur.edges[0]) continue;
                if (len >= 3 && cur.vertices[1] > cur.vertices[len - 1]) continue;
                if (len == 2 && e < cur.edges[0]) continue;
                Cycle c = cur;
                c.edges.push_back(e);
                out.push_back(std::move(c));
            }
            return;
        }
        for (int d : g.darts(v)) {
            int w = g.head(d);
            if (w <= s || used[w]) continue;
            used[w] = 1;
            cur.vertices.push_back(w);
            cur.edges.push_back(CubicGraph::edge_of(d));
            self(self, s, w);
            cur.vertices.pop_back();
            cur.edges.pop_back();
            used[w] = 0;
        }
    };
    for (int s = 0; s < n; ++s) {
        used[s] = 1;
        cur = Cycle{{s}, {}};
        rec(rec, s, s);
        used[s] = 0;
    }
    return out;
}

inline bool is_induced_cycle(const CubicGraph& g, const vector<int>& cyc) {
    const int k = static_cast<int>(cyc.size());
    vector<int> pos(g.order(), -1);
    for (int i = 0; i < k; ++i) {
        if (cyc[i] < 0 || cyc[i] >= g.order() || pos[cyc[i]] >= 0) return false;
        pos[cyc[i]] = i;
    }
    for (int i = 0; i < k; ++i) {
        int u = cyc[i], w = cyc[(i + 1) % k];
        if (g.multiplicity(u, w) != 1) return false;
        for (int x : g.neighbours(u)) {
            if (pos[x] < 0) continue;
            int dpos = (pos[x] - i + k) % k;
            if (dpos != 1 && dpos != k - 1) return false;
        }
    }
    return true;
}

inline vector<Cycle> induced_cycles_of_length(const CubicGraph& g, int len) {
    vector<Cycle> out;
    for (auto& c : cycles_of_length(g, len))
        if (is_induced_cycle(g, c.vertices)) out.push_back(std::move(c));
    return out;
}

inline vector<int> cycle_edges(const CubicGraph& g, const vector<int>& cyc) {
    vector<int> es;
    const int k = static_cast<int>(cyc.size());
    for (int i = 0; i < k; ++i) {
        int e = g.edge_between(cyc[i], cyc[(i + 1) % k]);
        if (e < 0) throw Error(ErrorKind::NotInducedSixCycle, "consecutive vertices are not adjacent");
        es.push_back(e);
    }
    return es;
}

}  // namespace snarklab
