#pragma once

// Brute-force reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>

#include "snarklab/graph.hpp"

namespace oracle {

using snarklab::CubicGraph;
using std::array;
using std::vector;

inline CubicGraph pentagonal_prism() {
    vector<array<int, 2>> es;
    for (int i = 0; i < 5; ++i) {
        es.push_back({i, (i + 1) % 5});
        es.push_back({5 + i, 5 + (i + 1) % 5});
        es.push_back({i, 5 + i});
    }
    return CubicGraph(10, es);
}

// Two copies of K4 with one edge removed from each, joined by two edges.
// ea and eb index the removed edge in the first and second copy.
inline CubicGraph k4_sum2_k4(int ea = 0, int eb = 0) {
    const array<array<int, 2>, 6> k{{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}};
    vector<array<int, 2>> es;
    for (int i = 0; i < 6; ++i)
        if (i != ea) es.push_back(k[i]);
    for (int i = 0; i < 6; ++i)
        if (i != eb) es.push_back({k[i][0] + 4, k[i][1] + 4});
    es.push_back({k[ea][0], k[eb][0] + 4});
    es.push_back({k[ea][1], k[eb][1] + 4});
    return CubicGraph(8, es);
}

inline CubicGraph relabel(const CubicGraph& g, std::mt19937& rng) {
    vector<int> p(g.order());
    for (int i = 0; i < g.order(); ++i) p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    vector<array<int, 2>> es;
    for (auto [a, b] : g.edges()) es.push_back({p[a], p[b]});
    std::shuffle(es.begin(), es.end(), rng);
    return CubicGraph(g.order(), es);
}

inline bool connected_subset(const CubicGraph& g, std::uint32_t mask) {
    if (mask == 0) return false;
    int start = __builtin_ctz(mask);
    std::uint32_t seen = 1u << start, frontier = seen;
    while (frontier) {
        std::uint32_t next = 0;
        for (int v = 0; v < g.order(); ++v) {
            if (!(frontier >> v & 1)) continue;
            for (int w : g.neighbours(v))
                if ((mask >> w & 1) && !(seen >> w & 1)) next |= 1u << w;
        }
        seen |= next;
        frontier = next;
    }
    return seen == mask;
}

// Independent 2- and 3-edge cuts found by scanning every vertex subset with
// both sides connected. Requires order <= 20.
inline vector<vector<int>> independent_cuts_by_subsets(const CubicGraph& g) {
    const int n = g.order();
    std::set<vector<int>> out;
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t s = 1; s < full; ++s) {
        if (!(s & 1)) continue;  // each cut once: side containing vertex 0
        vector<int> cut;
        for (int e = 0; e < g.size(); ++e) {
            auto [a, b] = g.ends(e);
            if ((s >> a & 1) != (s >> b & 1)) cut.push_back(e);
        }
        if (cut.size() < 2 || cut.size() > 3) continue;
        bool indep = true;
        for (size_t i = 0; i < cut.size(); ++i)
            for (size_t j = i + 1; j < cut.size(); ++j)
                if (g.adjacent_edges(cut[i], cut[j])) indep = false;
        if (!indep) continue;
        if (!connected_subset(g, s) || !connected_subset(g, full & ~s)) continue;
        out.insert(cut);
    }
    return {out.begin(), out.end()};
}

// All proper 3-edge-colourings by plain enumeration of 3^m assignments with
// early rejection, edge by edge in id order.
inline std::uint64_t count_colourings(const CubicGraph& g) {
    vector<int> col(g.size(), 0);
    std::uint64_t c = 0;
    auto ok_at = [&](int v) {
        int seen = 0;
        for (int e : g.incident(v)) {
            if (!col[e]) continue;
            if (g.is_loop(e) || (seen >> col[e] & 1)) return false;
            seen |= 1 << col[e];
        }
        return true;
    };
    auto rec = [&](auto&& self, int e) -> void {
        if (e == g.size()) {
            ++c;
            return;
        }
        for (int k = 1; k <= 3; ++k) {
            col[e] = k;
            if (ok_at(g.ends(e)[0]) && ok_at(g.ends(e)[1])) self(self, e + 1);
        }
        col[e] = 0;
    };
    rec(rec, 0);
    return c;
}

// Proper 3-edge-colourability of a loopless subcubic multigraph by plain backtracking.
inline bool colourable_subcubic(int n, const vector<array<int, 2>>& es) {
    vector<int> col(es.size(), 0);
    vector<int> used(n, 0);  // colour bitmask at each vertex
    auto rec = [&](auto&& self, size_t e) -> bool {
        if (e == es.size()) return true;
        auto [a, b] = es[e];
        if (a == b) return false;
        for (int k = 1; k <= 3; ++k) {
            if ((used[a] | used[b]) >> k & 1) continue;
            used[a] |= 1 << k;
            used[b] |= 1 << k;
            if (self(self, e + 1)) return true;
            used[a] &= ~(1 << k);
            used[b] &= ~(1 << k);
        }
        return false;
    };
    return rec(rec, 0);
}

// Perfect matchings as sorted edge lists, by testing every subset of n/2 edges.
inline vector<vector<int>> perfect_matchings(const CubicGraph& g) {
    vector<vector<int>> out;
    vector<int> pick;
    const int half = g.order() / 2;
    auto rec = [&](auto&& self, int start, std::uint64_t used) -> void {
        if (static_cast<int>(pick.size()) == half) {
            out.push_back(pick);
            return;
        }
        for (int e = start; e < g.size(); ++e) {
            auto [a, b] = g.ends(e);
            if (a == b || (used >> a & 1) || (used >> b & 1)) continue;
            pick.push_back(e);
            self(self, e + 1, used | (1ull << a) | (1ull << b));
            pick.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

// Minimum uncovered edges over all triples of perfect matchings.
inline int colouring_defect(const CubicGraph& g) {
    auto pms = oracle::perfect_matchings(g);
    int best = g.size();
    const int k = static_cast<int>(pms.size());
    for (int i = 0; i < k; ++i)
        for (int j = i; j < k; ++j)
            for (int l = j; l < k; ++l) {
                vector<char> cov(g.size(), 0);
                for (int e : pms[i]) cov[e] = 1;
                for (int e : pms[j]) cov[e] = 1;
                for (int e : pms[l]) cov[e] = 1;
                int unc = 0;
                for (char c : cov) unc += !c;
                best = std::min(best, unc);
            }
    return best;
}

// Smallest number of perfect matchings covering every edge, capped at cap+1.
inline int perfect_matching_index(const CubicGraph& g, int cap = 5) {
    auto pms = oracle::perfect_matchings(g);
    const int k = static_cast<int>(pms.size());
    vector<std::uint64_t> masks(k, 0);
    for (int i = 0; i < k; ++i)
        for (int e : pms[i]) masks[i] |= 1ull << e;
    const std::uint64_t all = (g.size() == 64) ? ~0ull : ((1ull << g.size()) - 1);
    for (int t = 1; t <= cap; ++t) {
        bool found = false;
        auto rec = [&](auto&& self, int start, int left, std::uint64_t cov) -> void {
            if (found) return;
            if (left == 0) {
                if (cov == all) found = true;
                return;
            }
            for (int i = start; i < k && !found; ++i) self(self, i, left - 1, cov | masks[i]);
        };
        rec(rec, 0, t, 0);
        if (found) return t;
    }
    return cap + 1;
}

// Even subgraphs are the cycle space; the shortest cover is found by trying
// every multiset of nonempty even subgraphs in increasing total length.
inline int exact_scc(const CubicGraph& g) {
    const int m = g.size();
    vector<std::uint32_t> even;
    for (std::uint32_t s = 1; s < (1u << m); ++s) {
        bool ok = true;
        for (int v = 0; v < g.order() && ok; ++v) {
            int d = 0;
            for (int dd : g.darts(v))
                if (s >> CubicGraph::edge_of(dd) & 1) ++d;
            ok = d % 2 == 0;
        }
        if (ok) even.push_back(s);
    }
    // shortest path over covered-edge masks
    const std::uint32_t full = (1u << m) - 1;
    vector<int> dist(1u << m, 1 << 29);
    dist[0] = 0;
    for (std::uint32_t s = 0; s <= full; ++s) {
        if (dist[s] >= (1 << 29)) continue;
        if (s == full) break;
        int low = __builtin_ctz(~s);
        for (auto c : even) {
            if (!(c >> low & 1)) continue;
            std::uint32_t t = s | c;
            dist[t] = std::min(dist[t], dist[s] + __builtin_popcount(c));
        }
    }
    return dist[full];
}

}  // namespace oracle
