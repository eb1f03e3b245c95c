#include "stratglue/enumeration.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace stratglue::graphs {

namespace {

bool vertex_stable(int weight, int valence) { return 2 - 2 * weight - valence < 0; }

/// Every graph obtained by inserting one edge: either a new loop at a
/// positive-weight vertex, or splitting a vertex in two along a new edge.
std::vector<StableGraph> one_edge_expansions(const StableGraph& g)
{
    std::vector<StableGraph> out;
    const int nv = static_cast<int>(g.num_vertices());
    const auto weights = std::vector<int>(g.weights().begin(), g.weights().end());
    const auto edges = std::vector<Edge>(g.edges().begin(), g.edges().end());
    const auto tails = std::vector<int>(g.tails().begin(), g.tails().end());

    for (int v = 0; v < nv; ++v) {
        if (weights[v] > 0) {
            auto w = weights;
            auto e = edges;
            w[v] -= 1;
            e.push_back({v, v});
            out.emplace_back(std::move(w), std::move(e), tails);
        }

        // Legs at v: tails are encoded as -(label), half-edges as 2e / 2e+1.
        std::vector<int> legs;
        for (int label = 1; label <= static_cast<int>(tails.size()); ++label) {
            if (tails[label - 1] == v) legs.push_back(-label);
        }
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
            if (edges[e].a == v) legs.push_back(2 * e);
            if (edges[e].b == v) legs.push_back(2 * e + 1);
        }
        const int k = static_cast<int>(legs.size());
        const int fresh = nv;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            const int moved = std::popcount(mask);
            for (int w1 = 0; w1 <= weights[v]; ++w1) {
                const int w2 = weights[v] - w1;
                if (!vertex_stable(w1, k - moved + 1) || !vertex_stable(w2, moved + 1)) continue;
                auto w = weights;
                auto e = edges;
                auto t = tails;
                w[v] = w1;
                w.push_back(w2);
                for (int i = 0; i < k; ++i) {
                    if (!(mask & (std::uint64_t{1} << i))) continue;
                    const int leg = legs[i];
                    if (leg < 0) {
                        t[-leg - 1] = fresh;
                    } else if (leg % 2 == 0) {
                        e[leg / 2].a = fresh;
                    } else {
                        e[leg / 2].b = fresh;
                    }
                }
                e.push_back({v, fresh});
                out.emplace_back(std::move(w), std::move(e), std::move(t));
            }
        }
    }
    return out;
}

bool by_edges_then_encoding(const GraphClass& x, const GraphClass& y)
{
    const auto ex = x.representative().num_edges();
    const auto ey = y.representative().num_edges();
    if (ex != ey) return ex < ey;
    return x < y;
}

} // namespace

std::vector<GraphClass> enumerate_stable_graphs(int g, int n)
{
    if (g < 0 || n < 0 || 2 * g - 2 + n <= 0) {
        throw StabilityError("no stable graphs of type (" + std::to_string(g) + "," + std::to_string(n) + ")");
    }
    std::set<GraphClass> seen;
    std::vector<GraphClass> level{canonical_form(StableGraph::single_vertex(g, n))};
    seen.insert(level.front());
    while (!level.empty()) {
        std::set<GraphClass> next;
        for (const GraphClass& c : level) {
            for (const StableGraph& h : one_edge_expansions(c.representative())) {
                GraphClass k = canonical_form(h);
                if (!seen.count(k)) next.insert(std::move(k));
            }
        }
        level.assign(next.begin(), next.end());
        seen.insert(level.begin(), level.end());
    }
    std::vector<GraphClass> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), by_edges_then_encoding);
    return out;
}

int StrataPoset::index_of(const GraphClass& c) const
{
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (elements[i] == c) return static_cast<int>(i);
    }
    return -1;
}

int StrataPoset::layer_of(int element) const
{
    for (std::size_t k = 0; k < layers.size(); ++k) {
        if (std::find(layers[k].begin(), layers[k].end(), element) != layers[k].end()) return static_cast<int>(k);
    }
    return -1;
}

StrataPoset build_poset(int g, int n)
{
    StrataPoset p;
    p.genus = g;
    p.tails = n;
    p.elements = enumerate_stable_graphs(g, n);
    const std::size_t size = p.elements.size();

    std::map<std::vector<int>, int> position;
    for (std::size_t i = 0; i < size; ++i) position[p.elements[i].encoding()] = static_cast<int>(i);

    std::set<std::pair<int, int>> covers;
    for (std::size_t i = 0; i < size; ++i) {
        const StableGraph& rep = p.elements[i].representative();
        for (int e = 0; e < static_cast<int>(rep.num_edges()); ++e) {
            const int one[] = {e};
            const GraphClass image = canonical_form(contract(rep, one));
            covers.insert({static_cast<int>(i), position.at(image.encoding())});
        }
    }
    p.covers.assign(covers.begin(), covers.end());

    // Elements are sorted by edge count, so every cover target precedes its source.
    p.up_.assign(size, std::vector<bool>(size, false));
    for (std::size_t i = 0; i < size; ++i) {
        p.up_[i][i] = true;
        for (auto [lo, hi] : p.covers) {
            if (lo != static_cast<int>(i)) continue;
            for (std::size_t j = 0; j < size; ++j) {
                if (p.up_[hi][j]) p.up_[i][j] = true;
            }
        }
    }

    std::vector<bool> placed(size, false);
    std::size_t remaining = size;
    while (remaining > 0) {
        std::vector<int> layer;
        for (std::size_t i = 0; i < size; ++i) {
            if (placed[i]) continue;
            bool minimal = true;
            for (std::size_t j = 0; j < size && minimal; ++j) {
                if (!placed[j] && j != i && p.up_[j][i]) minimal = false;
            }
            if (minimal) layer.push_back(static_cast<int>(i));
        }
        for (int i : layer) placed[i] = true;
        remaining -= layer.size();
        p.layers.push_back(std::move(layer));
    }
    return p;
}

std::string poset_dot(const StrataPoset& poset)
{
    std::ostringstream out;
    out << "digraph strata_" << poset.genus << '_' << poset.tails << " {\n";
    out << "  rankdir=BT;\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < poset.size(); ++i) {
        const StableGraph& g = poset.elements[i].representative();
        out << "  s" << i << " [label=\"" << describe(g) << "\\ndim " << dimension(g) << "\"];\n";
    }
    for (auto [lo, hi] : poset.covers) out << "  s" << lo << " -> s" << hi << ";\n";
    out << "}\n";
    return out.str();
}

} // namespace stratglue::graphs
