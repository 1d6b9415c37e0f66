#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>

#include "snarklab/budget.hpp"
#include "snarklab/graph.hpp"

namespace snarklab {

// Colours 1, 2, 3 are the nonzero elements of Z2 x Z2 under xor.
using EdgeColouring = vector<int>;

// Backtracking 3-edge-colourer for subcubic multigraphs. Picks the uncoloured
// edge with the fewest free colours; colours are tried in order 1, 2, 3.
class EdgeColourer {
public:
    explicit EdgeColourer(const Multigraph& g) : n_(g.n), edges_(g.edges) {
        for (auto [a, b] : edges_)
            if (a == b) has_loop_ = true;
    }

    std::optional<EdgeColouring> solve(const vector<int>& fixed = {}) {
        if (!init(fixed)) return std::nullopt;
        std::optional<EdgeColouring> out;
        search([&] {
            out = col_;
            return true;
        });
        return out;
    }

    std::uint64_t count(const vector<int>& fixed = {}) {
        if (!init(fixed)) return 0;
        std::uint64_t c = 0;
        search([&] {
            ++c;
            return false;
        });
        return c;
    }

    // Calls visit(colouring) for every extension; stops when visit returns true.
    template <class F>
    bool enumerate(const vector<int>& fixed, F&& visit) {
        if (!init(fixed)) return false;
        return search([&] { return visit(static_cast<const EdgeColouring&>(col_)); });
    }

private:
    bool init(const vector<int>& fixed) {
        const int m = static_cast<int>(edges_.size());
        col_.assign(m, 0);
        used_.assign(n_, 0);
        if (has_loop_) return false;
        for (int e = 0; e < m && e < static_cast<int>(fixed.size()); ++e) {
            int c = fixed[e];
            if (c == 0) continue;
            if (c < 1 || c > 3) throw Error(ErrorKind::InconsistentFixed, "colour out of range");
            auto [a, b] = edges_[e];
            if ((used_[a] | used_[b]) & (1 << c))
                throw Error(ErrorKind::InconsistentFixed, "fixed colours clash at a vertex");
            col_[e] = c;
            used_[a] |= 1 << c;
            used_[b] |= 1 << c;
        }
        return true;
    }

    template <class F>
    bool search(F&& leaf) {
        tick();
        const int m = static_cast<int>(edges_.size());
        int best = -1, best_opts = 4;
        for (int e = 0; e < m; ++e) {
            if (col_[e]) continue;
            auto [a, b] = edges_[e];
            int opts = 3 - __builtin_popcount(used_[a] | used_[b]);
            if (opts < best_opts) {
                best = e;
                best_opts = opts;
                if (opts <= 1) break;
            }
        }
        if (best < 0) return leaf();
        if (best_opts == 0) return false;
        auto [a, b] = edges_[best];
        int taken = used_[a] | used_[b];
        for (int c = 1; c <= 3; ++c) {
            if (taken & (1 << c)) continue;
            col_[best] = c;
            used_[a] |= 1 << c;
            used_[b] |= 1 << c;
            bool stop = search(leaf);
            used_[a] &= ~(1 << c);
            used_[b] &= ~(1 << c);
            col_[best] = 0;
            if (stop) return true;
        }
        return false;
    }

    int n_;
    vector<array<int, 2>> edges_;
    bool has_loop_ = false;
    EdgeColouring col_;
    vector<int> used_;
};

inline std::optional<EdgeColouring> colour_multigraph(const Multigraph& g, const vector<int>& fixed = {}) {
    return EdgeColourer(g).solve(fixed);
}

inline std::optional<EdgeColouring> three_edge_colour(const CubicGraph& g, const vector<int>& fixed = {}) {
    return colour_multigraph(to_multigraph(g), fixed);
}

inline bool is_colourable(const CubicGraph& g) { return three_edge_colour(g).has_value(); }

// Every vertex sees pairwise distinct colours on its coloured edges, and edges
// listed as mandatory are all coloured.
inline bool is_proper_colouring(const Multigraph& g, const EdgeColouring& col, bool require_total = true) {
    if (col.size() != g.edges.size()) return false;
    vector<int> used(g.n, 0);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        int c = col[e];
        if (c == 0) {
            if (require_total) return false;
            continue;
        }
        if (c < 1 || c > 3) return false;
        auto [a, b] = g.edges[e];
        if (a == b || (used[a] & (1 << c)) || (used[b] & (1 << c))) return false;
        used[a] |= 1 << c;
        used[b] |= 1 << c;
    }
    return true;
}

inline bool is_proper_colouring(const CubicGraph& g, const EdgeColouring& col) {
    if (!is_proper_colouring(to_multigraph(g), col)) return false;
    for (int v = 0; v < g.order(); ++v) {
        int s = 0;
        for (int e : g.incident(v)) s ^= col[e];
        if (s != 0) return false;
    }
    return true;
}

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
};

inline Rational make_rational(std::uint64_t a, std::uint64_t b) {
    std::uint64_t g = std::gcd(a, b);
    if (g == 0) return {0, 1};
    return {a / g, b / g};
}

struct ColouringCount {
    std::uint64_t total = 0;
    Rational kaszonyi;  // total / 18
};

// Exact count. In each component the lowest edge is fixed to colour 1 and one
// edge next to it to colour 2; the count is multiplied back by 6 (or 3).
inline ColouringCount count_colourings(const Multigraph& g) {
    int comps = 0;
    auto lab = component_labels(g.n, g.edges, nullptr, &comps);
    std::uint64_t total = 1;
    vector<char> done(comps, 0);
    for (int e0 = 0; e0 < static_cast<int>(g.edges.size()); ++e0) {
        int c = lab[g.edges[e0][0]];
        if (done[c]) continue;
        done[c] = 1;
        Multigraph sub{g.n, {}};
        vector<int> fixed;
        int partner = -1;
        for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
            if (lab[g.edges[e][0]] != c) continue;
            sub.edges.push_back(g.edges[e]);
        }
        fixed.assign(sub.edges.size(), 0);
        fixed[0] = 1;
        for (int e = 1; e < static_cast<int>(sub.edges.size()) && partner < 0; ++e) {
            auto [a, b] = sub.edges[e];
            auto [p, q] = sub.edges[0];
            if (a == p || a == q || b == p || b == q) partner = e;
        }
        std::uint64_t factor = 3;
        if (partner >= 0) {
            fixed[partner] = 2;
            factor = 6;
        }
        std::uint64_t k = EdgeColourer(sub).count(fixed);
        total *= factor * k;
        if (total == 0) break;
    }
    return {total, make_rational(total, 18)};
}

inline ColouringCount count_colourings(const CubicGraph& g) { return count_colourings(to_multigraph(g)); }

// True when G~e (delete e, smooth) is not 3-edge-colourable.
inline bool suppressible(const CubicGraph& g, int e) {
    if (g.is_loop(e)) throw Error(ErrorKind::LoopEdge, "edge " + std::to_string(e) + " is a loop");
    CubicGraph h = suppress_edge(g, e);
    return !is_colourable(h);
}

// Number of 3-edge-colourings of G~e divided by 18.
inline Rational kaszonyi_value(const CubicGraph& g, int e) {
    if (g.is_loop(e)) throw Error(ErrorKind::LoopEdge, "edge " + std::to_string(e) + " is a loop");
    return count_colourings(suppress_edge(g, e)).kaszonyi;
}

// G - {u, v} as a subcubic multigraph is 3-edge-colourable.
inline bool removable_pair_colourable(const CubicGraph& g, int e) {
    auto [u, v] = g.ends(e);
    return colour_multigraph(delete_vertices(g, {u, v})).has_value();
}

struct HeavyPentagon {
    Cycle pentagon;
    int witness_edge = -1;
};

inline vector<HeavyPentagon> heavy_pentagons(const CubicGraph& g) {
    vector<HeavyPentagon> out;
    vector<int> verdict(g.size(), -1);
    for (auto& c : cycles_of_length(g, 5)) {
        for (int e : c.edges) {
            if (verdict[e] < 0) verdict[e] = removable_pair_colourable(g, e) ? 1 : 0;
            if (verdict[e] == 1) {
                out.push_back({c, e});
                break;
            }
        }
    }
    return out;
}

// Sum over the boundary of H of the colours, in Z2 x Z2. The colouring must be
// proper at every vertex of H, with all incident edges coloured.
inline int boundary_colour_sum(const CubicGraph& g, const vector<int>& h_vertices, const EdgeColouring& xi) {
    vector<char> in(g.order(), 0);
    for (int v : h_vertices) in[v] = 1;
    for (int v : h_vertices) {
        int seen = 0;
        for (int e : g.incident(v)) {
            int c = e < static_cast<int>(xi.size()) ? xi[e] : 0;
            if (c < 1 || c > 3 || (seen & (1 << c)) || g.is_loop(e))
                throw Error(ErrorKind::ImproperColouring, "colouring is not proper at vertex " + std::to_string(v));
            seen |= 1 << c;
        }
    }
    int s = 0;
    for (int e : boundary(g, h_vertices)) s ^= xi[e];
    return s;
}

inline bool check_parity_lemma(const CubicGraph& g, const vector<int>& h_vertices, const EdgeColouring& xi) {
    return boundary_colour_sum(g, h_vertices, xi) == 0;
}

// Raw vector form: the boundary colours of a k-pole, summed in Z2 x Z2.
inline int colour_vector_sum(const vector<int>& colours) {
    int s = 0;
    for (int c : colours) {
        if (c < 1 || c > 3) throw Error(ErrorKind::ImproperColouring, "colour out of range");
        s ^= c;
    }
    return s;
}

inline bool strong_snark(const CubicGraph& g) {
    if (is_colourable(g)) throw Error(ErrorKind::NotSnark, "graph is 3-edge-colourable");
    for (int e = 0; e < g.size(); ++e) {
        if (g.is_loop(e)) continue;
        if (!suppressible(g, e)) return false;
    }
    return true;
}

struct AlmostBipartite {
    array<int, 2> surplus;
    EdgeColouring colouring;
};

inline std::optional<AlmostBipartite> almost_bipartite_and_colour(const CubicGraph& g) {
    if (is_bipartite(g.order(), g.edges())) return std::nullopt;
    vector<char> skip(g.size(), 0);
    for (int e = 0; e < g.size(); ++e) {
        skip[e] = 1;
        for (int f = e + 1; f < g.size(); ++f) {
            skip[f] = 1;
            bool bip = is_bipartite(g.order(), g.edges(), &skip);
            skip[f] = 0;
            if (!bip) continue;
            auto col = three_edge_colour(g);
            if (!col) throw Error(ErrorKind::VerificationFailed, "almost bipartite graph without a 3-edge-colouring");
            return AlmostBipartite{{e, f}, *col};
        }
        skip[e] = 0;
    }
    return std::nullopt;
}

}  // namespace snarklab
