#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "snarklab/defect.hpp"

namespace snarklab {

struct PMCover {
    vector<EdgeMask> matchings;

    vector<int> multiplicity(int size) const {
        vector<int> mult(size, 0);
        for (auto& m : matchings)
            for (int e = 0; e < size; ++e) mult[e] += m[e];
        return mult;
    }
    EdgeMask doubly(int size) const {
        EdgeMask d;
        auto mult = multiplicity(size);
        for (int e = 0; e < size; ++e)
            if (mult[e] == 2) d.set(e);
        return d;
    }
};

inline bool verify_pm_cover(const CubicGraph& g, const PMCover& c) {
    for (auto& m : c.matchings)
        if (!is_perfect_matching(g, m)) return false;
    for (int x : c.multiplicity(g.size()))
        if (x < 1) return false;
    if (c.matchings.size() == 4 && !is_perfect_matching(g, c.doubly(g.size()))) return false;
    return true;
}

// ---- k-cover search ----
//
// pi(G) <= k iff the edges can be labelled by nonempty subsets of {1..k} so
// that the three labels at every vertex partition {1..k}: label(e) lists the
// matchings containing e. Domains are bitsets over the admissible subsets.
// Beyond the vertex constraints, every 2-edge-cut forces equal labels and
// every 3-edge-cut forces each matching to meet the cut an odd number of times.

struct CoverSearchStats {
    std::uint64_t nodes = 0;
    bool exhausted = false;
};

class CoverCSP {
public:
    CoverCSP(const CubicGraph& g, int k) : g_(g), k_(k), full_((1 << k) - 1) {
        if (k < 3 || k > 5) throw Error(ErrorKind::BadSpec, "cover size must be 3, 4 or 5");
        require_searchable(g);
        vidx_.assign(1 << k, -1);
        for (int s = 1; s < (1 << k); ++s)
            if (__builtin_popcount(s) <= k - 2) {
                vidx_[s] = static_cast<int>(vals_.size());
                vals_.push_back(s);
            }
        const int nv = static_cast<int>(vals_.size());
        for (int kind = 0; kind < 2; ++kind) {
            third_[kind].assign(nv * nv, -1);
            for (int x = 0; x < nv; ++x)
                for (int y = 0; y < nv; ++y) {
                    int a = vals_[x], b = vals_[y];
                    if (kind == 0 && (a & b)) continue;
                    int z = full_ ^ a ^ b;
                    if (z == 0 || vidx_[z] < 0) continue;
                    if (kind == 0 && (z & (a | b))) continue;
                    third_[kind][x * nv + y] = vidx_[z];
                }
        }
        build_constraints();
        build_order();
    }

    // Labels (subset bitmask per edge) of a cover, or nullopt when none exists.
    std::optional<vector<int>> solve(CoverSearchStats* stats = nullptr) {
        nodes_ = 0;
        std::optional<vector<int>> out;
        const int m = g_.size();
        for (int e = 0; e < m; ++e)
            if (g_.is_loop(e)) return finish(stats, out);
        vector<std::uint32_t> dom(m, (vals_.size() == 32) ? ~0u : ((1u << vals_.size()) - 1));
        if (!propagate_all(dom)) return finish(stats, out);
        for (auto& root : root_forms()) {
            auto nd = dom;
            bool ok = true;
            for (int i = 0; i < 3 && ok; ++i) {
                int e = g_.incident(0)[i];
                int v = vidx_[root[i]];
                if (v < 0 || !(nd[e] >> v & 1)) ok = false;
                else nd[e] = 1u << v;
            }
            if (!ok || !propagate_from(nd, g_.incident(0))) continue;
            if (solve_components(nd, unassigned(nd, all_vars()))) {
                vector<int> labels(m);
                for (int e = 0; e < m; ++e) labels[e] = vals_[__builtin_ctz(nd[e])];
                out = labels;
                return finish(stats, out);
            }
        }
        return finish(stats, out);
    }

    PMCover to_cover(const vector<int>& labels) const {
        PMCover c;
        c.matchings.assign(k_, EdgeMask());
        for (int e = 0; e < g_.size(); ++e)
            for (int i = 0; i < k_; ++i)
                if (labels[e] >> i & 1) c.matchings[i].set(e);
        return c;
    }

private:
    struct Constraint {
        int kind;  // 0 vertex partition, 1 odd 3-cut, 2 equal 2-cut
        array<int, 3> vars;
    };

    std::optional<vector<int>> finish(CoverSearchStats* stats, const std::optional<vector<int>>& out) const {
        if (stats) {
            stats->nodes = nodes_;
            stats->exhausted = !out.has_value();
        }
        return out;
    }

    // Canonical labels at vertex 0 up to permuting the k matchings.
    vector<array<int, 3>> root_forms() const {
        vector<array<int, 3>> out;
        if (k_ == 3) {
            out.push_back({1, 2, 4});
        } else if (k_ == 4) {
            for (int t = 0; t < 3; ++t) {
                array<int, 3> r{};
                r[t] = 0b1100;
                r[(t + 1) % 3] = 0b0001;
                r[(t + 2) % 3] = 0b0010;
                out.push_back(r);
            }
        } else {
            for (int t = 0; t < 3; ++t) {
                array<int, 3> r{};
                r[t] = 0b11100;
                r[(t + 1) % 3] = 0b00001;
                r[(t + 2) % 3] = 0b00010;
                out.push_back(r);
            }
            for (int t = 0; t < 3; ++t) {
                array<int, 3> r{};
                r[t] = 0b10000;
                r[(t + 1) % 3] = 0b00011;
                r[(t + 2) % 3] = 0b01100;
                out.push_back(r);
            }
        }
        return out;
    }

    void build_constraints() {
        const int m = g_.size();
        watch_.assign(m, {});
        auto add = [&](int kind, array<int, 3> vs) {
            int id = static_cast<int>(cons_.size());
            cons_.push_back({kind, vs});
            int arity = kind == 2 ? 2 : 3;
            for (int i = 0; i < arity; ++i) watch_[vs[i]].push_back(id);
        };
        for (int v = 0; v < g_.order(); ++v) add(0, g_.incident(v));
        if (!is_two_connected(g_)) return;
        for (auto& c : edge_cuts(g_, 2, false)) add(2, {c.edges[0], c.edges[1], -1});
        for (auto& c : edge_cuts(g_, 3, false)) {
            if (c.side_a.size() < 2) continue;  // a single vertex is already a vertex constraint
            add(1, {c.edges[0], c.edges[1], c.edges[2]});
        }
    }

    void build_order() {
        const int m = g_.size();
        rank_.assign(m, m);
        vector<char> seen(g_.order(), 0);
        std::queue<int> q;
        int r = 0;
        for (int s = 0; s < g_.order(); ++s) {
            if (seen[s]) continue;
            seen[s] = 1;
            q.push(s);
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                for (int d : g_.darts(v)) {
                    int e = CubicGraph::edge_of(d);
                    if (rank_[e] == m) rank_[e] = r++;
                    int w = g_.head(d);
                    if (!seen[w]) {
                        seen[w] = 1;
                        q.push(w);
                    }
                }
            }
        }
    }

    vector<int> all_vars() const {
        vector<int> v(g_.size());
        std::iota(v.begin(), v.end(), 0);
        return v;
    }

    static vector<int> unassigned(const vector<std::uint32_t>& dom, const vector<int>& vars) {
        vector<int> out;
        for (int e : vars)
            if (__builtin_popcount(dom[e]) > 1) out.push_back(e);
        return out;
    }

    // Generalised arc consistency for one constraint; false on a wipe-out.
    bool revise(const Constraint& c, vector<std::uint32_t>& dom, vector<int>& changed) {
        if (c.kind == 2) {
            std::uint32_t x = dom[c.vars[0]] & dom[c.vars[1]];
            if (!x) return false;
            for (int i = 0; i < 2; ++i)
                if (dom[c.vars[i]] != x) {
                    dom[c.vars[i]] = x;
                    changed.push_back(c.vars[i]);
                }
            return true;
        }
        const int nv = static_cast<int>(vals_.size());
        const auto& tab = third_[c.kind];
        std::uint32_t da = dom[c.vars[0]], db = dom[c.vars[1]], dc = dom[c.vars[2]];
        std::uint32_t na = 0, nb = 0, nc = 0;
        for (std::uint32_t a = da; a; a &= a - 1) {
            int x = __builtin_ctz(a);
            const int* row = &tab[x * nv];
            for (std::uint32_t b = db; b; b &= b - 1) {
                int y = __builtin_ctz(b);
                int z = row[y];
                if (z >= 0 && (dc >> z & 1)) {
                    na |= 1u << x;
                    nb |= 1u << y;
                    nc |= 1u << z;
                }
            }
        }
        if (!na) return false;
        std::uint32_t nw[3] = {na, nb, nc};
        for (int i = 0; i < 3; ++i)
            if (dom[c.vars[i]] != nw[i]) {
                dom[c.vars[i]] = nw[i];
                changed.push_back(c.vars[i]);
            }
        return true;
    }

    bool propagate_queue(vector<std::uint32_t>& dom, vector<int>& queue) {
        in_queue_.assign(cons_.size(), 0);
        for (int id : queue) in_queue_[id] = 1;
        vector<int> changed;
        size_t head = 0;
        while (head < queue.size()) {
            tick();
            int id = queue[head++];
            in_queue_[id] = 0;
            changed.clear();
            if (!revise(cons_[id], dom, changed)) return false;
            for (int e : changed)
                for (int other : watch_[e])
                    if (other != id && !in_queue_[other]) {
                        in_queue_[other] = 1;
                        queue.push_back(other);
                    }
        }
        return true;
    }

    bool propagate_all(vector<std::uint32_t>& dom) {
        vector<int> q(cons_.size());
        std::iota(q.begin(), q.end(), 0);
        return propagate_queue(dom, q);
    }

    template <class Vars>
    bool propagate_from(vector<std::uint32_t>& dom, const Vars& vars) {
        vector<int> q;
        for (int e : vars)
            for (int id : watch_[e]) q.push_back(id);
        std::sort(q.begin(), q.end());
        q.erase(std::unique(q.begin(), q.end()), q.end());
        return propagate_queue(dom, q);
    }

    // Splits unassigned variables into groups that share no constraint with two
    // or more unassigned variables. Such groups can be solved independently.
    vector<vector<int>> split(const vector<std::uint32_t>& dom, const vector<int>& vars) {
        if (vars.size() <= 1) return {vars};
        UnionFind uf(g_.size());
        vector<char> mark(g_.size(), 0);
        for (int e : vars) mark[e] = 1;
        for (int e : vars)
            for (int id : watch_[e]) {
                const auto& c = cons_[id];
                int arity = c.kind == 2 ? 2 : 3;
                for (int i = 0; i < arity; ++i) {
                    int f = c.vars[i];
                    if (f != e && mark[f] && __builtin_popcount(dom[f]) > 1) uf.unite(e, f);
                }
            }
        std::map<int, vector<int>> groups;
        for (int e : vars) groups[uf.find(e)].push_back(e);
        vector<vector<int>> out;
        for (auto& kv : groups) out.push_back(std::move(kv.second));
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
        return out;
    }

    bool solve_components(vector<std::uint32_t>& dom, const vector<int>& vars) {
        for (auto& comp : split(dom, vars)) {
            if (!search(dom, comp)) return false;
        }
        return true;
    }

    bool search(vector<std::uint32_t>& dom, const vector<int>& vars) {
        ++nodes_;
        tick();
        int best = -1, best_size = 99;
        for (int e : vars) {
            int s = __builtin_popcount(dom[e]);
            if (s <= 1) continue;
            if (s < best_size || (s == best_size && rank_[e] < rank_[best])) {
                best = e;
                best_size = s;
            }
        }
        if (best < 0) return true;
        for (std::uint32_t d = dom[best]; d; d &= d - 1) {
            int x = __builtin_ctz(d);
            auto nd = dom;
            nd[best] = 1u << x;
            array<int, 1> one{best};
            if (!propagate_from(nd, one)) continue;
            if (solve_components(nd, unassigned(nd, vars))) {
                dom = std::move(nd);
                return true;
            }
        }
        return false;
    }

    const CubicGraph& g_;
    int k_;
    int full_;
    vector<int> vals_, vidx_;
    array<vector<int>, 2> third_;
    vector<Constraint> cons_;
    vector<vector<int>> watch_;
    vector<int> rank_;
    vector<char> in_queue_;
    std::uint64_t nodes_ = 0;
};

inline std::optional<PMCover> find_k_cover(const CubicGraph& g, int k, CoverSearchStats* stats = nullptr) {
    require_bridgeless(g);
    CoverCSP csp(g, k);
    auto labels = csp.solve(stats);
    if (!labels) return std::nullopt;
    auto c = csp.to_cover(*labels);
    if (!verify_pm_cover(g, c)) throw Error(ErrorKind::VerificationFailed, "cover search returned an invalid cover");
    return c;
}

inline std::optional<PMCover> find_4cover(const CubicGraph& g, CoverSearchStats* stats = nullptr) {
    require_bridgeless(g);
    if (auto col = three_edge_colour(g)) {
        auto a = array_from_colouring(g, *col);
        if (stats) *stats = {};
        return PMCover{{a.m[0], a.m[1], a.m[2], a.m[0]}};
    }
    return find_k_cover(g, 4, stats);
}

// A perfect matching containing every edge in `need`, if one exists.
inline std::optional<EdgeMask> perfect_matching_containing(const CubicGraph& g, const vector<int>& need) {
    std::optional<EdgeMask> out;
    EdgeMask req = list_to_mask(need);
    for (int e : need)
        for (int f : need)
            if (e < f && g.adjacent_edges(e, f)) return std::nullopt;
    for_each_perfect_matching(g, [&](const EdgeMask& m) {
        if ((m & req) == req) {
            out = m;
            return true;
        }
        return false;
    });
    return out;
}

// Extends an optimal 3-array by matchings through the uncovered edges.
inline std::optional<PMCover> seeded_5cover(const CubicGraph& g) {
    auto cert = colouring_defect(g);
    auto& u = cert.core.uncovered;
    if (u.empty() || u.size() > 6) return std::nullopt;
    const int n = static_cast<int>(u.size());
    // try every split of the uncovered edges into two matchings
    for (int mask = 0; mask < (1 << n); ++mask) {
        vector<int> a, b;
        for (int i = 0; i < n; ++i) (mask >> i & 1 ? a : b).push_back(u[i]);
        if (a.empty() || (!b.empty() && mask > ((1 << n) - 1 - mask))) continue;
        auto p = perfect_matching_containing(g, a);
        if (!p) continue;
        std::optional<EdgeMask> q = b.empty() ? p : perfect_matching_containing(g, b);
        if (!q) continue;
        PMCover c{{cert.witness.m[0], cert.witness.m[1], cert.witness.m[2], *p, *q}};
        if (verify_pm_cover(g, c)) return c;
    }
    return std::nullopt;
}

struct PMIResult {
    int value = 0;  // 3, 4, 5, or cap + 1
    std::optional<PMCover> cover;
    CoverSearchStats four;  // record of the 4-cover search
};

inline PMIResult perfect_matching_index(const CubicGraph& g, int cap = 5) {
    require_bridgeless(g);
    PMIResult r;
    if (auto col = three_edge_colour(g)) {
        auto a = array_from_colouring(g, *col);
        r.value = 3;
        r.cover = PMCover{{a.m[0], a.m[1], a.m[2]}};
        return r;
    }
    if (cap < 4) {
        r.value = cap + 1;
        return r;
    }
    if (auto c = find_k_cover(g, 4, &r.four)) {
        r.value = 4;
        r.cover = c;
        return r;
    }
    if (cap < 5) {
        r.value = cap + 1;
        return r;
    }
    auto c = seeded_5cover(g);
    if (!c) c = find_k_cover(g, 5);
    if (c) {
        r.value = 5;
        r.cover = c;
    } else {
        r.value = 6;
    }
    return r;
}

struct ApexResult {
    bool apex = false;
    int pi_inflated = 0;
};

inline ApexResult is_apex(const CubicGraph& g, int v) {
    auto h = inflate_vertex(g, v).graph;
    int pi = perfect_matching_index(h).value;
    return {pi == 4, pi};
}

// ---- cut parity ----

inline vector<AuditClause> cut_parity_audit(const CubicGraph& g, const PMCover& c) {
    AuditClause two{"2-cut edges share multiplicity and members", true, ""};
    AuditClause three{"3-cut has one or three doubly covered edges; three lie in one matching", true, ""};
    if (c.matchings.size() != 4) throw Error(ErrorKind::NotFourCover, "audit needs a 4-cover");
    auto mult = c.multiplicity(g.size());
    auto members = [&](int e) {
        int s = 0;
        for (int i = 0; i < 4; ++i)
            if (c.matchings[i][e]) s |= 1 << i;
        return s;
    };
    for (auto& cut : edge_cuts(g, 2, false)) {
        int a = cut.edges[0], b = cut.edges[1];
        if (members(a) != members(b)) {
            two.pass = false;
            two.detail = "cut {" + std::to_string(a) + "," + std::to_string(b) + "}";
        }
    }
    for (auto& cut : edge_cuts(g, 3, false)) {
        int d = 0;
        for (int e : cut.edges) d += mult[e] == 2;
        bool ok = d == 1 || d == 3;
        if (d == 3) {
            bool some = false;
            for (int i = 0; i < 4; ++i) {
                bool all = true;
                for (int e : cut.edges) all = all && c.matchings[i][e];
                some = some || all;
            }
            ok = ok && some;
        }
        if (!ok) {
            three.pass = false;
            three.detail = "cut at edge " + std::to_string(cut.edges[0]);
        }
    }
    return {two, three};
}

// ---- barrier sets: quasi-bipartite and six-cut certificates ----

// Finds an independent S within `allowed` such that every component L of
// G[W - S] has exactly three boundary edges in G.
struct BarrierSearch {
    BarrierSearch(const CubicGraph& graph, vector<char> w, vector<char> allow, vector<char> out, vector<char> in,
                  int min)
        : g(graph), in_w(std::move(w)), allowed(std::move(allow)), forced_out(std::move(out)),
          forced_in(std::move(in)), min_size(min) {}

    const CubicGraph& g;
    vector<char> in_w;     // region W
    vector<char> allowed;  // vertices that may join S
    vector<char> forced_out;
    vector<char> forced_in;
    int min_size = 0;

    std::optional<vector<int>> run() {
        const int n = g.order();
        state_.assign(n, kUndecided);
        for (int v = 0; v < n; ++v) {
            if (!in_w[v]) continue;
            if (forced_out[v]) state_[v] = kOut;
            if (forced_in[v]) {
                if (!allowed[v] || forced_out[v]) return std::nullopt;
                state_[v] = kIn;
            }
        }
        for (int v = 0; v < n; ++v)
            if (state_[v] == kIn)
                for (int w : g.neighbours(v))
                    if (w == v || state_[w] == kIn) return std::nullopt;
        order_.clear();
        vector<char> seen(n, 0);
        for (int s = 0; s < n; ++s) {
            if (!in_w[s] || seen[s]) continue;
            std::queue<int> q;
            q.push(s);
            seen[s] = 1;
            while (!q.empty()) {
                int v = q.front();
                q.pop();
                order_.push_back(v);
                for (int w : g.neighbours(v))
                    if (in_w[w] && !seen[w]) {
                        seen[w] = 1;
                        q.push(w);
                    }
            }
        }
        if (!consistent()) return std::nullopt;
        if (rec(0)) {
            vector<int> s;
            for (int v = 0; v < n; ++v)
                if (state_[v] == kIn) s.push_back(v);
            return s;
        }
        return std::nullopt;
    }

private:
    enum : char { kUndecided, kIn, kOut };

    // Components of decided-out vertices: the edges to S or out of W are final
    // boundary; edges to undecided vertices may still close up.
    bool consistent(bool final = false) {
        const int n = g.order();
        vector<int> comp(n, -1);
        for (int s = 0; s < n; ++s) {
            if (!in_w[s] || state_[s] != kOut || comp[s] >= 0) continue;
            int fixed = 0, open = 0;
            vector<int> stack{s};
            comp[s] = s;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int d : g.darts(v)) {
                    int w = g.head(d);
                    if (w == v) continue;
                    if (!in_w[w] || state_[w] == kIn) {
                        ++fixed;
                    } else if (state_[w] == kUndecided) {
                        ++open;
                    } else if (comp[w] < 0) {
                        comp[w] = s;
                        stack.push_back(w);
                    }
                }
            }
            if (fixed > 3) return false;
            if ((open == 0 || final) && fixed != 3) return false;
        }
        return true;
    }

    bool rec(size_t i) {
        tick();
        if (i == order_.size()) {
            int sz = 0;
            for (char s : state_) sz += s == kIn;
            return sz >= min_size && consistent(true);
        }
        int v = order_[i];
        if (state_[v] != kUndecided) return rec(i + 1);
        bool can_in = allowed[v];
        for (int w : g.neighbours(v))
            if (w == v || state_[w] == kIn) can_in = false;
        if (can_in) {
            state_[v] = kIn;
            if (consistent() && rec(i + 1)) return true;
        }
        state_[v] = kOut;
        if (consistent() && rec(i + 1)) return true;
        state_[v] = kUndecided;
        return false;
    }

    vector<char> state_;
    vector<int> order_;
};

struct QuasiBipartiteWitness {
    vector<int> bipartising;           // U
    vector<vector<int>> quasi_partite;  // components of K - U
};

inline vector<vector<int>> components_outside(const CubicGraph& g, const vector<char>& in_w, const vector<int>& s) {
    vector<char> gone(g.order(), 0);
    for (int v : s) gone[v] = 1;
    vector<vector<int>> out;
    vector<char> seen(g.order(), 0);
    for (int v = 0; v < g.order(); ++v) {
        if (!in_w[v] || gone[v] || seen[v]) continue;
        vector<int> comp, stack{v};
        seen[v] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            comp.push_back(x);
            for (int y : g.neighbours(x))
                if (in_w[y] && !gone[y] && !seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(comp);
    }
    return out;
}

inline bool verify_quasi_bipartite(const CubicGraph& k, const QuasiBipartiteWitness& w,
                                   std::optional<int> required_trivial = std::nullopt) {
    if (w.bipartising.size() < 2 || w.bipartising.size() != w.quasi_partite.size()) return false;
    vector<char> in_u(k.order(), 0);
    for (int u : w.bipartising) in_u[u] = 1;
    for (int u : w.bipartising)
        for (int x : k.neighbours(u))
            if (in_u[x]) return false;
    size_t covered = w.bipartising.size();
    for (auto& comp : w.quasi_partite) {
        covered += comp.size();
        for (int v : comp)
            if (in_u[v]) return false;
        auto bd = boundary(k, comp);
        if (bd.size() != 3) return false;
        for (int e : bd) {
            auto [a, b] = k.ends(e);
            if (!in_u[a] && !in_u[b]) return false;
        }
    }
    if (covered != static_cast<size_t>(k.order())) return false;
    if (required_trivial) {
        bool found = false;
        for (auto& comp : w.quasi_partite) found = found || (comp.size() == 1 && comp[0] == *required_trivial);
        if (!found) return false;
    }
    return true;
}

inline std::optional<QuasiBipartiteWitness> quasi_bipartite(const CubicGraph& k,
                                                            std::optional<int> required_trivial = std::nullopt) {
    const int n = k.order();
    BarrierSearch s{k, vector<char>(n, 1), vector<char>(n, 1), vector<char>(n, 0), vector<char>(n, 0), 2};
    if (required_trivial) {
        // {v} is a component of K - U exactly when v stays out and all its neighbours join U
        int v = *required_trivial;
        s.allowed[v] = 0;
        s.forced_out[v] = 1;
        for (int w : k.neighbours(v)) {
            if (w == v) return std::nullopt;
            s.forced_in[w] = 1;
        }
    }
    auto found = s.run();
    if (!found) return std::nullopt;
    vector<char> all(n, 1);
    QuasiBipartiteWitness w{*found, components_outside(k, all, *found)};
    if (!verify_quasi_bipartite(k, w, required_trivial))
        throw Error(ErrorKind::VerificationFailed, "barrier search returned an invalid bipartising set");
    return w;
}

struct SixCutCertificate {
    vector<int> s;
    vector<vector<int>> components;
};

struct SixCutResult {
    std::optional<EdgeMask> matching;  // perfect matching of H when one exists
    std::optional<SixCutCertificate> certificate;
};

inline SixCutResult six_cut_certificate(const CubicGraph& g, const vector<int>& h) {
    if (boundary(g, h).size() != 6) throw Error(ErrorKind::NotSixCut, "subgraph boundary is not 6 edges");
    const int n = g.order();
    vector<char> in_h(n, 0);
    for (int v : h) in_h[v] = 1;
    SixCutResult r;
    // perfect matching of H by backtracking on the lowest unmatched vertex
    {
        vector<char> matched(n, 0);
        for (int v = 0; v < n; ++v)
            if (!in_h[v]) matched[v] = 1;
        EdgeMask cur;
        auto rec = [&](auto&& self, int v) -> bool {
            tick();
            while (v < n && matched[v]) ++v;
            if (v == n) return true;
            matched[v] = 1;
            for (int d : g.darts(v)) {
                int w = g.head(d);
                if (w == v || matched[w]) continue;
                matched[w] = 1;
                cur.set(CubicGraph::edge_of(d));
                if (self(self, v + 1)) return true;
                cur.reset(CubicGraph::edge_of(d));
                matched[w] = 0;
            }
            matched[v] = 0;
            return false;
        };
        if (rec(rec, 0)) {
            r.matching = cur;
            return r;
        }
    }
    vector<char> allowed(n, 0);
    for (int v : h) {
        bool inner = true;
        for (int w : g.neighbours(v)) inner = inner && in_h[w] && w != v;
        allowed[v] = inner;
    }
    BarrierSearch s{g, in_h, allowed, vector<char>(n, 0), vector<char>(n, 0), 0};
    auto found = s.run();
    if (!found) throw Error(ErrorKind::VerificationFailed, "no barrier found for a matchingless 6-pole");
    SixCutCertificate c{*found, components_outside(g, in_h, *found)};
    int odd = 0;
    for (auto& comp : c.components) odd += comp.size() % 2;
    if (odd != static_cast<int>(c.s.size()) + 2)
        throw Error(ErrorKind::VerificationFailed, "barrier violates the odd component count");
    r.certificate = c;
    return r;
}

// ---- colour types of 6-poles ----

inline std::string canonical_type(const vector<int>& v) {
    static const array<array<int, 4>, 6> perms{{{0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3},
                                                {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1}}};
    std::string best;
    for (auto& p : perms) {
        std::string s;
        for (int c : v) s.push_back(static_cast<char>('0' + p[c]));
        if (best.empty() || s < best) best = s;
    }
    return best;
}

inline bool full_palette(const std::string& t) {
    int cnt[4] = {0, 0, 0, 0};
    for (char ch : t) ++cnt[ch - '0'];
    return cnt[1] == 2 && cnt[2] == 2 && cnt[3] == 2;
}

// Every colour type with each colour exactly twice (15 of them).
inline std::set<std::string> all_full_palette_types() {
    std::set<std::string> out;
    vector<int> v(6);
    for (int code = 0; code < 729; ++code) {
        int x = code;
        for (int i = 0; i < 6; ++i, x /= 3) v[i] = x % 3 + 1;
        auto t = canonical_type(v);
        if (full_palette(t)) out.insert(t);
    }
    return out;
}

// Types of all 3-edge-colourings of a pole, read on the given edges in order.
inline std::set<std::string> pole_colour_types(const Multigraph& pole, const vector<int>& dangling) {
    std::set<std::string> out;
    EdgeColourer solver(pole);
    solver.enumerate({}, [&](const EdgeColouring& col) {
        vector<int> v;
        for (int e : dangling) v.push_back(col[e]);
        out.insert(canonical_type(v));
        return false;
    });
    return out;
}

// H together with its boundary edges, each ending in a new pendant vertex.
inline std::set<std::string> colour_types(const CubicGraph& g, const vector<int>& h, const vector<int>& ordering) {
    auto bd = boundary(g, h);
    auto sorted = ordering;
    std::sort(sorted.begin(), sorted.end());
    if (bd.size() != 6 || sorted != bd) throw Error(ErrorKind::NotSixCut, "ordering is not the 6-edge boundary of H");
    const int n = g.order();
    vector<char> in_h(n, 0);
    for (int v : h) in_h[v] = 1;
    vector<int> id(n, -1);
    int next = 0;
    for (int v : h) id[v] = next++;
    Multigraph pole{next + 6, {}};
    vector<int> pos(g.size(), -1);
    for (int e = 0; e < g.size(); ++e) {
        auto [a, b] = g.ends(e);
        if (in_h[a] && in_h[b]) pole.edges.push_back({id[a], id[b]});
    }
    vector<int> dangling;
    for (int i = 0; i < 6; ++i) {
        auto [a, b] = g.ends(ordering[i]);
        int inner = in_h[a] ? a : b;
        dangling.push_back(static_cast<int>(pole.edges.size()));
        pole.edges.push_back({id[inner], next + i});
    }
    return pole_colour_types(pole, dangling);
}

struct Fragment {
    Multigraph pole;
    vector<int> dangling;  // f0..f5
};

// Hexagon c0..c5 with a triangle c0 c1 v on the edge c0c1, v joined to w, two
// dangling edges at w (f0, f1) and one at each of c2..c5 (f2..f5).
inline Fragment hexagon_triangle_fragment() {
    // c0..c5 = 0..5, v = 6, w = 7, pendant ends 8..13
    Fragment f{{14, {}}, {}};
    auto& es = f.pole.edges;
    for (int i = 0; i < 6; ++i) es.push_back({i, (i + 1) % 6});
    es.push_back({0, 6});
    es.push_back({1, 6});
    es.push_back({6, 7});
    for (int i = 0; i < 2; ++i) {
        f.dangling.push_back(static_cast<int>(es.size()));
        es.push_back({7, 8 + i});
    }
    for (int i = 2; i < 6; ++i) {
        f.dangling.push_back(static_cast<int>(es.size()));
        es.push_back({i, 8 + i});
    }
    return f;
}

}  // namespace snarklab
