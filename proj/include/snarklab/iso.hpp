#pragma once

#include <map>
#include <optional>
#include <vector>

#include "snarklab/graph.hpp"

namespace snarklab {

namespace iso_detail {

// Joint colour refinement so that class ids are comparable across both graphs.
inline void refine(const CubicGraph& g, const CubicGraph& h, vector<int>& cg, vector<int>& ch) {
    auto sig = [](const CubicGraph& x, const vector<int>& col, int v) {
        vector<int> s{col[v]};
        vector<array<int, 2>> nb;
        for (int w : x.neighbours(v)) {
            if (w == v) continue;
            nb.push_back({col[w], x.multiplicity(v, w)});
        }
        std::sort(nb.begin(), nb.end());
        for (auto [c, m] : nb) {
            s.push_back(c);
            s.push_back(m);
        }
        return s;
    };
    cg.assign(g.order(), 0);
    ch.assign(h.order(), 0);
    for (int v = 0; v < g.order(); ++v) cg[v] = g.multiplicity(v, v);
    for (int v = 0; v < h.order(); ++v) ch[v] = h.multiplicity(v, v);
    int classes = -1;
    while (true) {
        std::map<vector<int>, int> dict;
        vector<vector<int>> sg(g.order()), sh(h.order());
        for (int v = 0; v < g.order(); ++v) dict[sg[v] = sig(g, cg, v)] = 0;
        for (int v = 0; v < h.order(); ++v) dict[sh[v] = sig(h, ch, v)] = 0;
        int c = 0;
        for (auto& kv : dict) kv.second = c++;
        for (int v = 0; v < g.order(); ++v) cg[v] = dict[sg[v]];
        for (int v = 0; v < h.order(); ++v) ch[v] = dict[sh[v]];
        if (c == classes) break;
        classes = c;
    }
}

}  // namespace iso_detail

// Witness bijection V(G) -> V(H) preserving edge multiplicities, or nullopt.
inline std::optional<vector<int>> isomorphic(const CubicGraph& g, const CubicGraph& h) {
    if (g.order() != h.order() || g.size() != h.size()) return std::nullopt;
    const int n = g.order();
    if (n == 0) return vector<int>{};
    vector<int> cg, ch;
    iso_detail::refine(g, h, cg, ch);
    {
        auto a = cg, b = ch;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }
    // class sizes in G to pick a rare starting vertex per component
    std::map<int, int> csize;
    for (int c : cg) ++csize[c];
    vector<int> order, parent(n, -1);
    vector<char> seen(n, 0);
    while (static_cast<int>(order.size()) < n) {
        int start = -1;
        for (int v = 0; v < n; ++v)
            if (!seen[v] && (start < 0 || csize[cg[v]] < csize[cg[start]])) start = v;
        std::queue<int> q;
        q.push(start);
        seen[start] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            order.push_back(v);
            for (int w : g.neighbours(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    q.push(w);
                }
        }
    }
    vector<int> f(n, -1), finv(n, -1);
    auto consistent = [&](int x, int y) {
        if (cg[x] != ch[y]) return false;
        if (g.multiplicity(x, x) != h.multiplicity(y, y)) return false;
        int mapped_g = 0, mapped_h = 0;
        for (int z : g.neighbours(x)) {
            if (z == x || f[z] < 0) continue;
            ++mapped_g;
            if (g.multiplicity(x, z) != h.multiplicity(y, f[z])) return false;
        }
        for (int z : h.neighbours(y))
            if (z != y && finv[z] >= 0) ++mapped_h;
        return mapped_g == mapped_h;
    };
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) return true;
        int x = order[i];
        vector<int> cand;
        if (parent[x] >= 0) {
            for (int y : h.neighbours(f[parent[x]]))
                if (finv[y] < 0 && std::find(cand.begin(), cand.end(), y) == cand.end()) cand.push_back(y);
        } else {
            for (int y = 0; y < n; ++y)
                if (finv[y] < 0) cand.push_back(y);
        }
        for (int y : cand) {
            if (!consistent(x, y)) continue;
            f[x] = y;
            finv[y] = x;
            if (self(self, i + 1)) return true;
            f[x] = -1;
            finv[y] = -1;
        }
        return false;
    };
    if (!rec(rec, 0)) return std::nullopt;
    return f;
}

// Edge bijection induced by a vertex bijection; parallel edges are paired in id order.
inline vector<int> edge_map_from_vertex_map(const CubicGraph& g, const CubicGraph& h, const vector<int>& f) {
    vector<int> out(g.size(), -1);
    vector<char> used(h.size(), 0);
    for (int e = 0; e < g.size(); ++e) {
        int a = f[g.ends(e)[0]], b = f[g.ends(e)[1]];
        for (int d : h.darts(a)) {
            int x = CubicGraph::edge_of(d);
            if (!used[x] && h.head(d) == b) {
                used[x] = 1;
                out[e] = x;
                break;
            }
        }
        if (out[e] < 0) throw Error(ErrorKind::VerificationFailed, "vertex map is not an isomorphism");
    }
    return out;
}

// Cheap invariant used to bucket graphs before a full isomorphism test.
inline vector<long> graph_invariant(const CubicGraph& g) {
    vector<long> inv{g.order(), g.size()};
    int loops = 0, par = 0;
    for (int e = 0; e < g.size(); ++e) {
        if (g.is_loop(e)) ++loops;
        else if (g.multiplicity(g.ends(e)[0], g.ends(e)[1]) > 1) ++par;
    }
    inv.push_back(loops);
    inv.push_back(par);
    vector<long> tri(g.order(), 0);
    for (auto& c : cycles_of_length(g, 3))
        for (int v : c.vertices) ++tri[v];
    std::sort(tri.begin(), tri.end());
    inv.insert(inv.end(), tri.begin(), tri.end());
    return inv;
}

}  // namespace snarklab
