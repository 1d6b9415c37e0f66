#pragma once

// Composite graphs assembled from cyclically 4-edge-connected pieces.

#include <random>

#include "snarklab/decomposition.hpp"
#include "snarklab/named.hpp"

namespace fixture {

using namespace snarklab;

struct Composite {
    CubicGraph graph;
    vector<CubicGraph> pieces;
};

inline vector<CubicGraph> c4ec_pieces() { return {k4(), k33(), cube(), petersen()}; }

// Random mix of 2-sums and 3-sums; every piece is glued at a random element of
// the current graph with a random gluing.
inline Composite composite(std::uint64_t seed, int sums) {
    std::mt19937_64 rng(seed);
    auto pool = c4ec_pieces();
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    Composite c;
    c.graph = pool[pick(static_cast<int>(pool.size()))];
    c.pieces.push_back(c.graph);
    for (int i = 0; i < sums; ++i) {
        const auto& k = pool[pick(static_cast<int>(pool.size()))];
        SumSpec s;
        s.kind = rng() & 1 ? SumKind::sum3 : SumKind::sum2;
        s.left = s.kind == SumKind::sum2 ? pick(c.graph.size()) : pick(c.graph.order());
        s.right = s.kind == SumKind::sum2 ? pick(k.size()) : pick(k.order());
        s.gluing = s.kind == SumKind::sum2 ? vector<int>{0, 1} : vector<int>{0, 1, 2};
        std::shuffle(s.gluing.begin(), s.gluing.end(), rng);
        c.graph = apply_sum(c.graph, k, s).graph;
        c.pieces.push_back(k);
    }
    return c;
}

}  // namespace fixture
