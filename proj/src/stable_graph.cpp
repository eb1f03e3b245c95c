#include "stratglue/stable_graph.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace stratglue::graphs {

StableGraph::StableGraph(std::vector<int> weights, std::vector<Edge> edges, std::vector<int> tails)
    : weights_(std::move(weights)), edges_(std::move(edges)), tails_(std::move(tails))
{
    if (weights_.empty()) {
        throw Error("a dual graph needs at least one vertex");
    }
    const int nv = static_cast<int>(weights_.size());
    for (int w : weights_) {
        if (w < 0) throw Error("vertex weights must be nonnegative");
    }
    for (const Edge& e : edges_) {
        if (e.a < 0 || e.a >= nv || e.b < 0 || e.b >= nv) {
            throw EdgeError("edge endpoint out of range");
        }
    }
    for (int v : tails_) {
        if (v < 0 || v >= nv) throw Error("tail attached to unknown vertex");
    }
}

StableGraph StableGraph::single_vertex(int g, int n)
{
    return StableGraph({g}, {}, std::vector<int>(static_cast<std::size_t>(n), 0));
}

int StableGraph::half_edge_vertex(int h) const
{
    const Edge& e = edge(h / 2);
    return (h % 2 == 0) ? e.a : e.b;
}

int StableGraph::tail_count(int v) const
{
    return static_cast<int>(std::count(tails_.begin(), tails_.end(), v));
}

int StableGraph::loop_count(int v) const
{
    return static_cast<int>(
        std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.a == v && e.b == v; }));
}

int StableGraph::valence(int v) const
{
    int m = tail_count(v);
    for (const Edge& e : edges_) {
        m += (e.a == v) + (e.b == v);
    }
    return m;
}

bool StableGraph::is_connected() const
{
    const std::size_t nv = weights_.size();
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = nv;
    for (const Edge& e : edges_) {
        const int ra = find(e.a);
        const int rb = find(e.b);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    return components == 1;
}

int genus(const StableGraph& g)
{
    if (!g.is_connected()) {
        throw ConnectivityError("genus is only defined for connected graphs");
    }
    const auto w = g.weights();
    const int total = std::accumulate(w.begin(), w.end(), 0);
    return total + static_cast<int>(g.num_edges()) - static_cast<int>(g.num_vertices()) + 1;
}

bool is_stable(const StableGraph& g)
{
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
        if (2 - 2 * g.weight(v) - g.valence(v) >= 0) return false;
    }
    return true;
}

int dimension(const StableGraph& g)
{
    if (!is_stable(g)) {
        throw StabilityError("dimension requires a stable graph");
    }
    return 3 * genus(g) - 3 + static_cast<int>(g.num_tails()) - static_cast<int>(g.num_edges());
}

Contraction contract_with_map(const StableGraph& g, std::span<const int> edges)
{
    const int nv = static_cast<int>(g.num_vertices());
    const int ne = static_cast<int>(g.num_edges());
    std::vector<bool> contracted(static_cast<std::size_t>(ne), false);
    for (int e : edges) {
        if (e < 0 || e >= ne) {
            throw EdgeError("edge " + std::to_string(e) + " is not in the graph");
        }
        contracted[e] = true;
    }

    std::vector<int> parent(static_cast<std::size_t>(nv));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int e = 0; e < ne; ++e) {
        if (!contracted[e]) continue;
        const int ra = find(g.edge(e).a);
        const int rb = find(g.edge(e).b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }

    // New vertices are numbered by the smallest old vertex of each component.
    std::vector<int> vertex_image(static_cast<std::size_t>(nv), -1);
    std::vector<int> root_id(static_cast<std::size_t>(nv), -1);
    int next = 0;
    for (int v = 0; v < nv; ++v) {
        const int r = find(v);
        if (root_id[r] < 0) root_id[r] = next++;
        vertex_image[v] = root_id[r];
    }

    // Weight of a merged vertex: summed weights plus the first Betti number
    // of the contracted subgraph on that component, so total genus is kept.
    std::vector<int> weights(static_cast<std::size_t>(next), 0);
    std::vector<int> comp_vertices(static_cast<std::size_t>(next), 0);
    std::vector<int> comp_edges(static_cast<std::size_t>(next), 0);
    for (int v = 0; v < nv; ++v) {
        weights[vertex_image[v]] += g.weight(v);
        comp_vertices[vertex_image[v]] += 1;
    }
    for (int e = 0; e < ne; ++e) {
        if (contracted[e]) comp_edges[vertex_image[g.edge(e).a]] += 1;
    }
    for (int c = 0; c < next; ++c) {
        weights[c] += comp_edges[c] - comp_vertices[c] + 1;
    }

    std::vector<Edge> new_edges;
    std::vector<int> edge_image(static_cast<std::size_t>(ne), -1);
    for (int e = 0; e < ne; ++e) {
        if (contracted[e]) continue;
        edge_image[e] = static_cast<int>(new_edges.size());
        new_edges.push_back({vertex_image[g.edge(e).a], vertex_image[g.edge(e).b]});
    }
    std::vector<int> tails;
    tails.reserve(g.num_tails());
    for (int v : g.tails()) tails.push_back(vertex_image[v]);

    return {StableGraph(std::move(weights), std::move(new_edges), std::move(tails)), std::move(vertex_image),
            std::move(edge_image)};
}

StableGraph contract(const StableGraph& g, std::span<const int> edges)
{
    return contract_with_map(g, edges).graph;
}

Contraction contract_mask(const StableGraph& g, std::uint64_t mask)
{
    std::vector<int> edges;
    for (int e = 0; e < static_cast<int>(g.num_edges()); ++e) {
        if (mask & (std::uint64_t{1} << e)) edges.push_back(e);
    }
    if (g.num_edges() < 64 && (mask >> g.num_edges()) != 0) {
        throw EdgeError("edge mask refers to edges outside the graph");
    }
    return contract_with_map(g, edges);
}

// ---------------------------------------------------------------------------
// Canonical form

namespace {

/// Iterated colour refinement. Colours are isomorphism invariant (tails are
/// part of the initial colour), so orderings that sort vertices by colour
/// form an isomorphism-invariant family to minimise over.
std::vector<int> refined_colours(const StableGraph& g)
{
    const int nv = static_cast<int>(g.num_vertices());
    std::vector<std::vector<int>> tail_labels(static_cast<std::size_t>(nv));
    for (int label = 1; label <= static_cast<int>(g.num_tails()); ++label) {
        tail_labels[g.tail_vertex(label)].push_back(label);
    }

    std::vector<std::vector<int>> signature(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) {
        auto& s = signature[v];
        s = {g.weight(v), g.valence(v), g.loop_count(v), static_cast<int>(tail_labels[v].size())};
        s.insert(s.end(), tail_labels[v].begin(), tail_labels[v].end());
    }

    auto rank = [&](const std::vector<std::vector<int>>& sig) {
        std::vector<std::vector<int>> sorted = sig;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<int> colour(sig.size());
        for (std::size_t v = 0; v < sig.size(); ++v) {
            colour[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
        }
        return std::pair{colour, sorted.size()};
    };

    auto [colour, count] = rank(signature);
    while (true) {
        std::vector<std::vector<int>> next(static_cast<std::size_t>(nv));
        for (int v = 0; v < nv; ++v) {
            std::vector<int> neighbours;
            for (const Edge& e : g.edges()) {
                if (e.is_loop()) continue;
                if (e.a == v) neighbours.push_back(colour[e.b]);
                if (e.b == v) neighbours.push_back(colour[e.a]);
            }
            std::sort(neighbours.begin(), neighbours.end());
            next[v] = {colour[v]};
            next[v].insert(next[v].end(), neighbours.begin(), neighbours.end());
        }
        auto [refined, refined_count] = rank(next);
        colour = std::move(refined);
        if (refined_count == count) break;
        count = refined_count;
    }
    return colour;
}

std::vector<int> encode(const StableGraph& g, const std::vector<int>& order, const std::vector<int>& position)
{
    std::vector<int> code;
    code.reserve(3 + order.size() + g.num_tails() + 2 * g.num_edges());
    code.push_back(static_cast<int>(g.num_vertices()));
    code.push_back(static_cast<int>(g.num_edges()));
    code.push_back(static_cast<int>(g.num_tails()));
    for (int old : order) code.push_back(g.weight(old));
    for (int v : g.tails()) code.push_back(position[v]);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(g.num_edges());
    for (const Edge& e : g.edges()) {
        const int a = position[e.a];
        const int b = position[e.b];
        pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    for (auto [a, b] : pairs) {
        code.push_back(a);
        code.push_back(b);
    }
    return code;
}

/// Visits every vertex ordering that lists colour classes in increasing
/// colour order, permuting freely inside each class.
template <class Visit>
void for_each_colour_ordering(const std::vector<int>& colour, Visit&& visit)
{
    const int nv = static_cast<int>(colour.size());
    std::vector<int> order(static_cast<std::size_t>(nv));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return colour[x] < colour[y]; });
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < nv;) {
        int j = i;
        while (j < nv && colour[order[j]] == colour[order[i]]) ++j;
        cells.emplace_back(i, j);
        i = j;
    }
    while (true) {
        visit(order);
        // Odometer over cells, each cell stepping through next_permutation.
        std::size_t c = 0;
        for (; c < cells.size(); ++c) {
            auto [b, e] = cells[c];
            if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
        }
        if (c == cells.size()) return;
    }
}

} // namespace

GraphClass canonical_form(const StableGraph& g)
{
    const std::vector<int> colour = refined_colours(g);
    std::vector<int> best;
    std::vector<int> best_position;
    std::vector<int> position(g.num_vertices());
    for_each_colour_ordering(colour, [&](const std::vector<int>& order) {
        for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);
        std::vector<int> code = encode(g, order, position);
        if (best.empty() || code < best) {
            best = std::move(code);
            best_position = position;
        }
    });

    std::vector<int> weights(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) weights[best_position[v]] = g.weight(static_cast<int>(v));
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        const int a = best_position[e.a];
        const int b = best_position[e.b];
        edges.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
        return std::pair{x.a, x.b} < std::pair{y.a, y.b};
    });
    std::vector<int> tails;
    for (int v : g.tails()) tails.push_back(best_position[v]);
    return GraphClass(std::move(best), StableGraph(std::move(weights), std::move(edges), std::move(tails)));
}

std::string GraphClass::key() const
{
    std::string out;
    for (std::size_t i = 0; i < encoding_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(encoding_[i]);
    }
    return out;
}

std::size_t GraphClassHash::operator()(const GraphClass& c) const
{
    std::size_t h = 1469598103934665603ull;
    for (int x : c.encoding()) {
        h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

// ---------------------------------------------------------------------------
// Automorphisms

std::vector<int> Automorphism::edge_perm() const
{
    std::vector<int> out(half_edge_perm.size() / 2);
    for (std::size_t e = 0; e < out.size(); ++e) out[e] = half_edge_perm[2 * e] / 2;
    return out;
}

Automorphism Automorphism::compose(const Automorphism& inner) const
{
    Automorphism out;
    out.vertex_perm.resize(vertex_perm.size());
    out.half_edge_perm.resize(half_edge_perm.size());
    for (std::size_t v = 0; v < vertex_perm.size(); ++v) out.vertex_perm[v] = vertex_perm[inner.vertex_perm[v]];
    for (std::size_t h = 0; h < half_edge_perm.size(); ++h) {
        out.half_edge_perm[h] = half_edge_perm[inner.half_edge_perm[h]];
    }
    return out;
}

namespace {

std::pair<int, int> endpoint_key(const Edge& e, const std::vector<int>& sigma)
{
    const int a = sigma[e.a];
    const int b = sigma[e.b];
    return {std::min(a, b), std::max(a, b)};
}

std::set<Automorphism> closure(const std::vector<Automorphism>& gens, const Automorphism& identity)
{
    std::set<Automorphism> seen{identity};
    std::vector<Automorphism> frontier{identity};
    while (!frontier.empty()) {
        std::vector<Automorphism> next;
        for (const auto& x : frontier) {
            for (const auto& s : gens) {
                Automorphism y = s.compose(x);
                if (seen.insert(y).second) next.push_back(std::move(y));
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

} // namespace

AutomorphismGroup automorphisms(const StableGraph& g)
{
    const int nv = static_cast<int>(g.num_vertices());
    const int ne = static_cast<int>(g.num_edges());
    const std::vector<int> colour = refined_colours(g);

    std::map<std::pair<int, int>, std::vector<int>> by_pair;
    for (int e = 0; e < ne; ++e) {
        const Edge& ed = g.edge(e);
        by_pair[{std::min(ed.a, ed.b), std::max(ed.a, ed.b)}].push_back(e);
    }

    AutomorphismGroup group;
    std::vector<int> sigma(static_cast<std::size_t>(nv));
    for_each_colour_ordering(colour, [&](const std::vector<int>& order) {
        // `order` lists vertices sorted by colour; pair it with the identity
        // sorted ordering to obtain a colour-preserving permutation.
        static thread_local std::vector<int> base;
        base.resize(order.size());
        std::iota(base.begin(), base.end(), 0);
        std::stable_sort(base.begin(), base.end(), [&](int x, int y) { return colour[x] < colour[y]; });
        for (std::size_t i = 0; i < order.size(); ++i) sigma[base[i]] = order[i];

        for (int v = 0; v < nv; ++v) {
            if (g.weight(v) != g.weight(sigma[v])) return;
        }
        for (int label = 1; label <= static_cast<int>(g.num_tails()); ++label) {
            if (sigma[g.tail_vertex(label)] != g.tail_vertex(label)) return;
        }
        std::vector<std::pair<const std::vector<int>*, const std::vector<int>*>> groups;
        for (const auto& [key, members] : by_pair) {
            auto image = endpoint_key(g.edge(members.front()), sigma);
            auto it = by_pair.find(image);
            if (it == by_pair.end() || it->second.size() != members.size()) return;
            groups.emplace_back(&members, &it->second);
        }

        // Enumerate bijections inside each parallel class and loop flips.
        std::vector<std::vector<int>> targets;
        for (auto& [src, dst] : groups) targets.push_back(*dst);
        std::vector<int> loops;
        for (int e = 0; e < ne; ++e) {
            if (g.edge(e).is_loop()) loops.push_back(e);
        }
        while (true) {
            std::vector<int> edge_map(static_cast<std::size_t>(ne));
            for (std::size_t k = 0; k < groups.size(); ++k) {
                const auto& src = *groups[k].first;
                for (std::size_t i = 0; i < src.size(); ++i) edge_map[src[i]] = targets[k][i];
            }
            for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << loops.size()); ++flips) {
                Automorphism a;
                a.vertex_perm = sigma;
                a.half_edge_perm.assign(static_cast<std::size_t>(2 * ne), 0);
                std::size_t loop_index = 0;
                for (int e = 0; e < ne; ++e) {
                    const Edge& src = g.edge(e);
                    const int f = edge_map[e];
                    const Edge& dst = g.edge(f);
                    if (src.is_loop()) {
                        const int o = static_cast<int>((flips >> loop_index++) & 1u);
                        a.half_edge_perm[2 * e] = 2 * f + o;
                        a.half_edge_perm[2 * e + 1] = 2 * f + 1 - o;
                    } else {
                        const bool straight = dst.a == sigma[src.a];
                        a.half_edge_perm[2 * e] = straight ? 2 * f : 2 * f + 1;
                        a.half_edge_perm[2 * e + 1] = straight ? 2 * f + 1 : 2 * f;
                    }
                }
                group.elements.push_back(std::move(a));
            }
            std::size_t k = 0;
            for (; k < targets.size(); ++k) {
                if (std::next_permutation(targets[k].begin(), targets[k].end())) break;
            }
            if (k == targets.size()) break;
        }
    });

    std::sort(group.elements.begin(), group.elements.end());
    Automorphism identity;
    identity.vertex_perm.resize(static_cast<std::size_t>(nv));
    identity.half_edge_perm.resize(static_cast<std::size_t>(2 * ne));
    std::iota(identity.vertex_perm.begin(), identity.vertex_perm.end(), 0);
    std::iota(identity.half_edge_perm.begin(), identity.half_edge_perm.end(), 0);
    std::set<Automorphism> generated{identity};
    for (const auto& a : group.elements) {
        if (generated.count(a)) continue;
        group.generators.push_back(a);
        generated = closure(group.generators, identity);
    }
    return group;
}

std::string describe(const StableGraph& g)
{
    std::ostringstream out;
    for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v) {
        if (v) out << ' ';
        out << 'v' << v << "(g" << g.weight(v);
        bool first = true;
        for (int label = 1; label <= static_cast<int>(g.num_tails()); ++label) {
            if (g.tail_vertex(label) != v) continue;
            out << (first ? ';' : ',') << label;
            first = false;
        }
        out << ')';
    }
    out << " |";
    for (const Edge& e : g.edges()) out << ' ' << e.a << '-' << e.b;
    return out.str();
}

} // namespace stratglue::graphs
