// Writes a small graph6 corpus of nontrivial snarks: Petersen, the flower
// snarks J5 and J7, and dot products of Petersen with itself and with the
// 18-vertex results. Duplicates up to isomorphism are dropped.

#include <iostream>

#include <CLI11.hpp>

#include "snarklab/colouring.hpp"
#include "snarklab/io.hpp"
#include "snarklab/iso.hpp"
#include "snarklab/named.hpp"

using namespace snarklab;

namespace {

bool nontrivial_snark(const CubicGraph& g) {
    return is_two_connected(g) && girth(g) >= 5 && cyclically_4_edge_connected(g) && !is_colourable(g);
}

void add_unique(vector<CubicGraph>& out, const CubicGraph& g) {
    for (auto& h : out)
        if (h.order() == g.order() && isomorphic(h, g)) return;
    out.push_back(g);
}

vector<CubicGraph> dot_products(const CubicGraph& g, size_t limit) {
    vector<CubicGraph> out;
    const auto pg = petersen();
    for (int e = 0; e < g.size() && out.size() < limit; ++e)
        for (int f = e + 1; f < g.size() && out.size() < limit; ++f) {
            if (g.adjacent_edges(e, f)) continue;
            auto d = dot_product(g, e, f, pg, 0);
            if (nontrivial_snark(d)) add_unique(out, d);
        }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"generate the sample snark corpus"};
    std::string path = "data/snarks.g6";
    size_t per_order = 6;
    app.add_option("output", path);
    app.add_option("--per-order", per_order, "cap on dot products kept per order");
    CLI11_PARSE(app, argc, argv);

    vector<CubicGraph> corpus{petersen(), flower_snark(5), flower_snark(7)};
    auto eighteen = dot_products(petersen(), per_order);
    for (auto& b : eighteen) add_unique(corpus, b);
    vector<CubicGraph> bigger;
    for (auto& b : eighteen)
        for (auto& d : dot_products(b, per_order)) {
            if (bigger.size() >= per_order) break;
            add_unique(bigger, d);
        }
    for (auto& d : bigger) add_unique(corpus, d);

    std::string text = "# nontrivial snarks, generated by make_corpus\n";
    for (auto& g : corpus) {
        if (!nontrivial_snark(g)) {
            std::cerr << "skipping a graph that is not a nontrivial snark\n";
            continue;
        }
        text += to_graph6(g) + "\n";
    }
    write_file(path, text);
    std::cerr << "wrote " << corpus.size() << " graphs to " << path << "\n";
    return 0;
}
