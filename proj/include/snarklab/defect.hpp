#pragma once

#include <optional>
#include <string>

#include "snarklab/colouring.hpp"

namespace snarklab {

inline bool is_perfect_matching(const CubicGraph& g, const EdgeMask& m) {
    vector<int> hit(g.order(), 0);
    for (int e = 0; e < g.size(); ++e) {
        if (!m[e]) continue;
        if (g.is_loop(e)) return false;
        ++hit[g.ends(e)[0]];
        ++hit[g.ends(e)[1]];
    }
    for (int h : hit)
        if (h != 1) return false;
    for (int e = g.size(); e < kMaxEdges; ++e)
        if (m[e]) return false;
    return true;
}

// Calls f(mask) for every perfect matching; stops when f returns true.
// Branches on the lowest unmatched vertex.
template <class F>
bool for_each_perfect_matching(const CubicGraph& g, F&& f) {
    require_searchable(g);
    const int n = g.order();
    vector<char> matched(n, 0);
    EdgeMask cur;
    auto rec = [&](auto&& self, int v) -> bool {
        tick();
        while (v < n && matched[v]) ++v;
        if (v == n) return f(static_cast<const EdgeMask&>(cur));
        matched[v] = 1;
        for (int d : g.darts(v)) {
            int e = CubicGraph::edge_of(d), w = g.head(d);
            if (w == v || matched[w]) continue;
            // parallel edges are distinct matchings; skip nothing
            matched[w] = 1;
            cur.set(e);
            bool stop = self(self, v + 1);
            cur.reset(e);
            matched[w] = 0;
            if (stop) {
                matched[v] = 0;
                return true;
            }
        }
        matched[v] = 0;
        return false;
    };
    return rec(rec, 0);
}

inline vector<EdgeMask> perfect_matchings(const CubicGraph& g) {
    require_bridgeless(g);
    vector<EdgeMask> out;
    for_each_perfect_matching(g, [&](const EdgeMask& m) {
        out.push_back(m);
        return false;
    });
    return out;
}

struct ThreeArray {
    array<EdgeMask, 3> m;

    vector<int> multiplicity(int size) const {
        vector<int> mult(size, 0);
        for (int e = 0; e < size; ++e) mult[e] = m[0][e] + m[1][e] + m[2][e];
        return mult;
    }
};

struct Core {
    vector<int> edges;  // multiplicity other than 1
    vector<int> uncovered;
    vector<int> doubly;
    vector<int> triply;
};

inline Core core_of(const CubicGraph& g, const ThreeArray& a) {
    Core c;
    auto mult = a.multiplicity(g.size());
    for (int e = 0; e < g.size(); ++e) {
        if (mult[e] == 1) continue;
        c.edges.push_back(e);
        (mult[e] == 0 ? c.uncovered : mult[e] == 2 ? c.doubly : c.triply).push_back(e);
    }
    return c;
}

// Vertex order of the core when it is a chordless 6-cycle with uncovered and
// doubly covered edges alternating; empty otherwise.
inline vector<int> hexagon_of_core(const CubicGraph& g, const Core& c) {
    if (c.edges.size() != 6 || c.uncovered.size() != 3 || c.doubly.size() != 3) return {};
    vector<vector<int>> inc(g.order());
    for (int e : c.edges) {
        if (g.is_loop(e)) return {};
        inc[g.ends(e)[0]].push_back(e);
        inc[g.ends(e)[1]].push_back(e);
    }
    int start = g.ends(c.edges[0])[0];
    vector<int> cyc{start};
    int prev = -1, v = start;
    for (int step = 0; step < 6; ++step) {
        if (inc[v].size() != 2) return {};
        int e = inc[v][0] == prev ? inc[v][1] : inc[v][0];
        prev = e;
        v = g.other(e, v);
        if (step < 5) cyc.push_back(v);
    }
    if (v != start || !is_induced_cycle(g, cyc)) return {};
    vector<char> unc(g.size(), 0);
    for (int e : c.uncovered) unc[e] = 1;
    auto ce = cycle_edges(g, cyc);
    for (int i = 0; i < 6; ++i)
        if (unc[ce[i]] == unc[ce[(i + 1) % 6]]) return {};
    return cyc;
}

struct DefectCertificate {
    int defect = 0;
    ThreeArray witness;
    Core core;
    bool hexagonal = false;
    vector<int> hexagon;  // cyclic vertex order when hexagonal
};

inline DefectCertificate make_certificate(const CubicGraph& g, const ThreeArray& a) {
    DefectCertificate c;
    c.witness = a;
    c.core = core_of(g, a);
    c.defect = static_cast<int>(c.core.uncovered.size());
    c.hexagon = hexagon_of_core(g, c.core);
    c.hexagonal = !c.hexagon.empty();
    return c;
}

inline ThreeArray array_from_colouring(const CubicGraph& g, const EdgeColouring& col) {
    ThreeArray a;
    for (int e = 0; e < g.size(); ++e) a.m[col[e] - 1].set(e);
    return a;
}

// ---- hexagonal cores ----

struct HexagonalWitness {
    vector<int> cycle;          // c0..c5
    vector<int> cycle_edges;    // edge i joins c_i and c_{i+1}
    array<int, 6> spokes;       // third edge at c_i
    array<int, 6> pattern;      // colour of spokes[i]
    int offset = 0;             // spokes s+2t and s+2t+1 share a colour
    EdgeColouring colouring;    // colouring of G - E(C), 0 on the cycle edges
};

// Searches for a colouring of G - E(C) in which the spokes of C are coloured in
// adjacent equal pairs. Colour symmetry lets us fix the pair colours as 1,2,3.
inline std::optional<HexagonalWitness> verify_hexagonal_core(const CubicGraph& g, const vector<int>& cyc) {
    if (cyc.size() != 6 || !is_induced_cycle(g, cyc))
        throw Error(ErrorKind::NotInducedSixCycle, "vertices do not form an induced 6-cycle");
    HexagonalWitness w;
    w.cycle = cyc;
    w.cycle_edges = cycle_edges(g, cyc);
    for (int i = 0; i < 6; ++i) {
        int c = cyc[i];
        for (int e : g.incident(c))
            if (e != w.cycle_edges[i] && e != w.cycle_edges[(i + 5) % 6]) w.spokes[i] = e;
    }
    vector<int> origin;
    Multigraph rest = delete_edges(g, w.cycle_edges, &origin);
    vector<int> pos(g.size(), -1);
    for (int i = 0; i < static_cast<int>(origin.size()); ++i) pos[origin[i]] = i;
    EdgeColourer solver(rest);
    for (int s = 0; s < 2; ++s) {
        vector<int> fixed(rest.edges.size(), 0);
        array<int, 6> pat{};
        for (int t = 0; t < 3; ++t) {
            pat[(s + 2 * t) % 6] = t + 1;
            pat[(s + 2 * t + 1) % 6] = t + 1;
        }
        bool clash = false;
        for (int i = 0; i < 6; ++i) {
            int& slot = fixed[pos[w.spokes[i]]];
            if (slot && slot != pat[i]) clash = true;
            slot = pat[i];
        }
        if (clash) continue;
        std::optional<EdgeColouring> col;
        try {
            col = solver.solve(fixed);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InconsistentFixed) throw;
        }
        if (!col) continue;
        w.pattern = pat;
        w.offset = s;
        w.colouring.assign(g.size(), 0);
        for (int i = 0; i < static_cast<int>(origin.size()); ++i) w.colouring[origin[i]] = (*col)[i];
        return w;
    }
    return std::nullopt;
}

// Matching j takes colour class j outside C plus the paired cycle edges whose
// pair colour is not j. The other three cycle edges stay uncovered.
inline ThreeArray array_from_hexagonal_witness(const CubicGraph& g, const HexagonalWitness& w) {
    ThreeArray a;
    for (int e = 0; e < g.size(); ++e)
        if (w.colouring[e]) a.m[w.colouring[e] - 1].set(e);
    for (int t = 0; t < 3; ++t) {
        int i = (w.offset + 2 * t) % 6;
        int pair_colour = w.pattern[i];
        for (int j = 1; j <= 3; ++j)
            if (j != pair_colour) a.m[j - 1].set(w.cycle_edges[i]);
    }
    return a;
}

inline vector<HexagonalWitness> hexagonal_cores(const CubicGraph& g, bool first_only = false) {
    vector<HexagonalWitness> out;
    for (auto& c : induced_cycles_of_length(g, 6)) {
        if (auto w = verify_hexagonal_core(g, c.vertices)) {
            out.push_back(std::move(*w));
            if (first_only) break;
        }
    }
    return out;
}

// ---- defect ----

struct DefectOptions {
    bool hexagonal_shortcut = true;
    int stop_at = -1;  // return as soon as an array with at most this many uncovered edges is found
};

inline DefectCertificate colouring_defect(const CubicGraph& g, const DefectOptions& opt = {}) {
    require_bridgeless(g);
    require_searchable(g);
    if (auto col = three_edge_colour(g)) return make_certificate(g, array_from_colouring(g, *col));
    // Uncolourable bridgeless cubic graphs never have defect below 3.
    constexpr int floor = 3;
    if (opt.hexagonal_shortcut) {
        auto hex = hexagonal_cores(g, true);
        if (!hex.empty()) return make_certificate(g, array_from_hexagonal_witness(g, hex[0]));
    }
    auto pms = perfect_matchings(g);
    const int k = static_cast<int>(pms.size());
    int best = g.size() + 1;
    ThreeArray best_array;
    const int stop = std::max(floor, opt.stop_at);
    for (int i = 0; i < k && best > stop; ++i) {
        for (int j = i; j < k && best > stop; ++j) {
            tick();
            // a third matching adds at most n/2 edges to the union
            EdgeMask inter = pms[i] & pms[j];
            if (static_cast<int>(inter.count()) >= best) continue;
            EdgeMask uni = pms[i] | pms[j];
            for (int l = j; l < k; ++l) {
                int unc = g.size() - static_cast<int>((uni | pms[l]).count());
                if (unc < best) {
                    best = unc;
                    best_array.m = {pms[i], pms[j], pms[l]};
                    if (best <= stop) break;
                }
            }
        }
    }
    if (best > g.size()) throw Error(ErrorKind::Bridged, "graph has no perfect matching");
    return make_certificate(g, best_array);
}

inline bool has_defect_three(const CubicGraph& g) {
    require_bridgeless(g);
    return !is_colourable(g) && !hexagonal_cores(g, true).empty();
}

// ---- Fano colouring ----

// Subset bitmask (bit i = matching i+1) to its point of Z2^3. The labels of any
// 3-array then sum to zero at every vertex.
constexpr array<int, 8> kFanoPoint{4, 1, 2, 7, 3, 6, 5, 0};

struct FanoColouring {
    vector<int> label;  // subset bitmask per edge
    vector<int> point;  // Z2^3 value per edge
    bool kirchhoff = true;
    bool proper = true;    // no edge labelled {1,2,3}
    bool f4_lines = true;  // every vertex carries a line of F4 (checked when proper)
};

inline bool is_f4_line(array<int, 3> l) {
    std::sort(l.begin(), l.end());
    static const array<array<int, 3>, 4> lines{{{1, 2, 4}, {0, 1, 6}, {0, 2, 5}, {0, 3, 4}}};
    for (auto& x : lines) {
        auto y = x;
        std::sort(y.begin(), y.end());
        if (y == l) return true;
    }
    return false;
}

inline FanoColouring fano_colouring(const CubicGraph& g, const ThreeArray& a) {
    FanoColouring f;
    f.label.assign(g.size(), 0);
    f.point.assign(g.size(), 0);
    for (int e = 0; e < g.size(); ++e) {
        for (int i = 0; i < 3; ++i)
            if (a.m[i][e]) f.label[e] |= 1 << i;
        f.point[e] = kFanoPoint[f.label[e]];
        if (f.label[e] == 7) f.proper = false;
    }
    for (int v = 0; v < g.order(); ++v) {
        int s = 0;
        array<int, 3> l{};
        auto ds = g.darts(v);
        for (int i = 0; i < 3; ++i) {
            int e = CubicGraph::edge_of(ds[i]);
            s ^= f.point[e];
            l[i] = f.label[e];
        }
        if (s != 0) f.kirchhoff = false;
        if (f.proper && !is_f4_line(l)) f.f4_lines = false;
    }
    if (!f.proper) f.f4_lines = false;
    return f;
}

// ---- triangles and audits ----

struct EssentialTriangle {
    array<int, 3> vertices;
    int defect_contracted = 0;
};

inline vector<Cycle> triangles(const CubicGraph& g) { return cycles_of_length(g, 3); }

inline EssentialTriangle contracted_defect(const CubicGraph& g, const Cycle& t) {
    auto h = contract(g, t.vertices).graph;
    return {{t.vertices[0], t.vertices[1], t.vertices[2]}, colouring_defect(h).defect};
}

inline vector<EssentialTriangle> essential_triangles(const CubicGraph& g) {
    if (!has_defect_three(g)) throw Error(ErrorKind::DefectNotThree, "graph does not have defect 3");
    vector<EssentialTriangle> out;
    for (auto& t : triangles(g)) {
        if (boundary(g, t.vertices).size() != 3) continue;
        auto h = contract(g, t.vertices).graph;
        if (is_colourable(h) || !hexagonal_cores(h, true).empty()) continue;
        out.push_back(contracted_defect(g, t));
    }
    if (out.size() > 1) throw Error(ErrorKind::VerificationFailed, "more than one essential triangle");
    return out;
}

struct AuditClause {
    std::string name;
    bool pass = true;
    std::string detail;
};

inline bool all_pass(const vector<AuditClause>& r) {
    for (auto& c : r)
        if (!c.pass) return false;
    return true;
}

inline vector<AuditClause> core_position_audit(const CubicGraph& g, const DefectCertificate& cert) {
    vector<AuditClause> out;
    if (!cert.hexagonal) {
        out.push_back({"hexagonal", false, "certificate core is not hexagonal"});
        return out;
    }
    vector<int> mult = cert.witness.multiplicity(g.size());
    vector<char> in_core(g.size(), 0), on_core(g.order(), 0);
    for (int e : cert.core.edges) in_core[e] = 1;
    for (int v : cert.hexagon) on_core[v] = 1;
    auto shared = [&](const vector<int>& es) {
        vector<int> s;
        for (int e : es)
            if (in_core[e]) s.push_back(e);
        return s;
    };

    AuditClause tri_meet{"triangle meets core in one uncovered edge with independent boundary", true, ""};
    AuditClause tri_disjoint{"triangle disjoint from core is not essential", true, ""};
    AuditClause tri_count{"core meets at most one triangle", true, ""};
    int meeting = 0;
    for (auto& t : triangles(g)) {
        auto s = shared(t.edges);
        bool touches = on_core[t.vertices[0]] || on_core[t.vertices[1]] || on_core[t.vertices[2]];
        if (!s.empty()) {
            ++meeting;
            auto bd = boundary(g, t.vertices);
            if (s.size() != 1 || mult[s[0]] != 0 || bd.size() != 3 || !pairwise_independent(g, bd)) {
                tri_meet.pass = false;
                tri_meet.detail = "triangle at vertex " + std::to_string(t.vertices[0]);
            }
        } else if (!touches) {
            auto h = contract(g, t.vertices).graph;
            if (!is_colourable(h) && hexagonal_cores(h, true).empty()) {
                tri_disjoint.pass = false;
                tri_disjoint.detail = "triangle at vertex " + std::to_string(t.vertices[0]);
            }
        }
    }
    if (meeting > 1) tri_count.pass = false;
    out.push_back(tri_meet);
    out.push_back(tri_disjoint);
    out.push_back(tri_count);

    AuditClause quad{"quadrilateral meets core in one uncovered edge, two doubly and two simply covered exits", true,
                     ""};
    for (auto& q : cycles_of_length(g, 4)) {
        auto s = shared(q.edges);
        if (s.empty()) continue;
        auto bd = boundary(g, q.vertices);
        int dbl = 0, sgl = 0;
        for (int e : bd) {
            if (mult[e] == 2) ++dbl;
            if (mult[e] == 1) ++sgl;
        }
        if (s.size() != 1 || mult[s[0]] != 0 || bd.size() != 4 || dbl != 2 || sgl != 2) {
            quad.pass = false;
            quad.detail = "quadrilateral at vertex " + std::to_string(q.vertices[0]);
        }
    }
    out.push_back(quad);

    AuditClause two{"no 2-edge-cut meets the core", true, ""};
    for (auto& c : edge_cuts(g, 2, false))
        if (!shared(c.edges).empty()) two.pass = false;
    out.push_back(two);

    AuditClause three{"3-cut meets core in two doubly covered edges and one snark side", true, ""};
    for (auto& c : edge_cuts(g, 3, false)) {
        if (!c.cycle_separating) continue;
        auto s = shared(c.edges);
        if (s.empty()) continue;
        bool ok = s.size() == 2 && mult[s[0]] == 2 && mult[s[1]] == 2;
        int snark_sides = 0;
        for (auto* side : {&c.side_a, &c.side_b}) {
            auto h = contract(g, *side).graph;
            if (is_colourable(h)) continue;
            ++snark_sides;
            vector<char> in(g.order(), 0);
            for (int v : *side) in[v] = 1;
            vector<int> inner;
            for (int e : cert.core.edges)
                if (in[g.ends(e)[0]] && in[g.ends(e)[1]]) inner.push_back(e);
            if (inner.size() != 1 || mult[inner[0]] != 0) ok = false;
        }
        if (snark_sides != 1) ok = false;
        if (!ok) {
            three.pass = false;
            three.detail = "cut at edge " + std::to_string(c.edges[0]);
        }
    }
    out.push_back(three);
    return out;
}

}  // namespace snarklab
