#pragma once

#include <random>
#include <string>

#include "snarklab/graph.hpp"

namespace snarklab {

inline CubicGraph k4() { return CubicGraph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}, {2, 3}}); }

inline CubicGraph dipole3() { return CubicGraph(2, {{0, 1}, {0, 1}, {0, 1}}); }

inline CubicGraph k33() {
    vector<array<int, 2>> es;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) es.push_back({i, j});
    return CubicGraph(6, es);
}

inline CubicGraph prism() {
    return CubicGraph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
}

inline CubicGraph cube() {
    vector<array<int, 2>> es;
    for (int v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b)
            if (v < (v ^ (1 << b))) es.push_back({v, v ^ (1 << b)});
    return CubicGraph(8, es);
}

// Vertices 0..5 form the distinguished 6-cycle (edges 0..5); 9 is the centre of the remaining claw.
inline CubicGraph petersen() {
    return CubicGraph(10, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
                           {0, 6}, {3, 6}, {1, 7}, {4, 7}, {2, 8}, {5, 8},
                           {6, 9}, {7, 9}, {8, 9}});
}

// Isaacs flower snark J_k (k odd): centres a_i, outer cycle b_i, and the twisted 2k-cycle c_i d_i.
inline CubicGraph flower_snark(int k) {
    vector<array<int, 2>> es;
    auto a = [&](int i) { return i; };
    auto b = [&](int i) { return k + i; };
    auto c = [&](int i) { return 2 * k + i; };
    auto d = [&](int i) { return 3 * k + i; };
    for (int i = 0; i < k; ++i) {
        es.push_back({a(i), b(i)});
        es.push_back({a(i), c(i)});
        es.push_back({a(i), d(i)});
        es.push_back({b(i), b((i + 1) % k)});
    }
    for (int i = 0; i + 1 < k; ++i) {
        es.push_back({c(i), c(i + 1)});
        es.push_back({d(i), d(i + 1)});
    }
    es.push_back({c(k - 1), d(0)});
    es.push_back({d(k - 1), c(0)});
    return CubicGraph(4 * k, es);
}

// Dot product: remove independent edges e=ab, f=cd from G and adjacent vertices x,y from H,
// then join a,b to the other neighbours of x and c,d to the other neighbours of y.
inline CubicGraph dot_product(const CubicGraph& g, int e, int f, const CubicGraph& h, int hx_edge) {
    if (g.adjacent_edges(e, f) || e == f) throw Error(ErrorKind::BadSpec, "dot product needs independent edges");
    int x = h.ends(hx_edge)[0], y = h.ends(hx_edge)[1];
    if (x == y || h.multiplicity(x, y) != 1) throw Error(ErrorKind::BadSpec, "dot product needs a simple edge in H");
    const int n1 = g.order();
    vector<array<int, 2>> es;
    for (int i = 0; i < g.size(); ++i)
        if (i != e && i != f) es.push_back(g.ends(i));
    vector<int> id(h.order(), -1);
    int next = n1;
    for (int v = 0; v < h.order(); ++v)
        if (v != x && v != y) id[v] = next++;
    vector<int> xs, ys;
    for (int i = 0; i < h.size(); ++i) {
        auto [p, q] = h.ends(i);
        bool px = p == x || p == y, qx = q == x || q == y;
        if (px && qx) continue;
        if (!px && !qx) {
            es.push_back({id[p], id[q]});
        } else {
            int hub = px ? p : q, out = px ? q : p;
            (hub == x ? xs : ys).push_back(id[out]);
        }
    }
    es.push_back({g.ends(e)[0], xs[0]});
    es.push_back({g.ends(e)[1], xs[1]});
    es.push_back({g.ends(f)[0], ys[0]});
    es.push_back({g.ends(f)[1], ys[1]});
    return CubicGraph(next, es);
}

// Random connected simple bipartite cubic graph with 2k vertices.
inline CubicGraph random_bipartite_cubic(int k, std::uint64_t seed) {
    if (k < 3) throw Error(ErrorKind::BadSpec, "bipartite cubic graphs need at least 6 vertices");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        vector<array<int, 2>> es;
        vector<vector<char>> adj(k, vector<char>(k, 0));
        bool ok = true;
        for (int r = 0; r < 3 && ok; ++r) {
            vector<int> p(k);
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            for (int i = 0; i < k; ++i) {
                if (adj[i][p[i]]) ok = false;
                adj[i][p[i]] = 1;
                es.push_back({i, k + p[i]});
            }
        }
        if (!ok) continue;
        CubicGraph g(2 * k, es);
        if (is_connected(g)) return g;
    }
    throw Error(ErrorKind::BadSpec, "failed to sample a bipartite cubic graph");
}

inline CubicGraph named_graph(const std::string& name) {
    if (name == "K4") return k4();
    if (name == "D3") return dipole3();
    if (name == "K33" || name == "K3,3") return k33();
    if (name == "prism") return prism();
    if (name == "cube") return cube();
    if (name == "petersen" || name == "Pg") return petersen();
    if (name.rfind("bip:", 0) == 0) {
        // bip:<half order>:<seed>
        auto rest = name.substr(4);
        auto colon = rest.find(':');
        int k = std::stoi(rest.substr(0, colon));
        std::uint64_t s = colon == std::string::npos ? 0 : std::stoull(rest.substr(colon + 1));
        return random_bipartite_cubic(k, s);
    }
    if (name.rfind("J", 0) == 0) return flower_snark(std::stoi(name.substr(1)));
    throw Error(ErrorKind::BadSpec, "unknown named graph '" + name + "'");
}

}  // namespace snarklab
