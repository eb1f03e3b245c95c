#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace stratglue::graphs {

/// Unordered pair of vertex ids. Edge e owns half-edges 2e (at `a`) and 2e+1 (at `b`).
struct Edge {
    int a = 0;
    int b = 0;

    bool is_loop() const { return a == b; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Weighted dual graph: genus-weighted vertices, edges (loops and multi-edges
/// allowed) and tails labelled 1..n. Vertex ids are positions in `weights`.
class StableGraph {
public:
    StableGraph(std::vector<int> weights, std::vector<Edge> edges, std::vector<int> tails);

    /// One vertex of weight `g` carrying tails 1..n and no edges.
    static StableGraph single_vertex(int g, int n);

    std::size_t num_vertices() const { return weights_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    std::size_t num_tails() const { return tails_.size(); }

    int weight(int v) const { return weights_.at(static_cast<std::size_t>(v)); }
    const Edge& edge(int e) const { return edges_.at(static_cast<std::size_t>(e)); }
    /// Vertex carrying the tail with label `label` (1-based).
    int tail_vertex(int label) const { return tails_.at(static_cast<std::size_t>(label - 1)); }

    std::span<const int> weights() const { return weights_; }
    std::span<const Edge> edges() const { return edges_; }
    std::span<const int> tails() const { return tails_; }

    int half_edge_vertex(int h) const;

    /// Number of legs (tails plus half-edges) at v; a loop counts twice.
    int valence(int v) const;
    int tail_count(int v) const;
    int loop_count(int v) const;

    bool is_connected() const;

    friend bool operator==(const StableGraph&, const StableGraph&) = default;

private:
    std::vector<int> weights_;
    std::vector<Edge> edges_;
    std::vector<int> tails_;
};

/// Sum of vertex weights plus the first Betti number. Throws ConnectivityError.
int genus(const StableGraph& g);

bool is_stable(const StableGraph& g);

/// 3*genus - 3 + n - |E|. Throws StabilityError on unstable input.
int dimension(const StableGraph& g);

/// Result of contracting a set of edges, with the induced maps on vertices
/// and on surviving edges (-1 for contracted edges).
struct Contraction {
    StableGraph graph;
    std::vector<int> vertex_image;
    std::vector<int> edge_image;
};

Contraction contract_with_map(const StableGraph& g, std::span<const int> edges);
StableGraph contract(const StableGraph& g, std::span<const int> edges);

/// Contraction along the edges whose bits are set in `mask`.
Contraction contract_mask(const StableGraph& g, std::uint64_t mask);

/// Isomorphism class of a StableGraph, keyed by a canonical encoding that is
/// invariant under relabelling of vertices, edges and half-edges (tails fixed).
class GraphClass {
public:
    GraphClass(std::vector<int> encoding, StableGraph representative)
        : encoding_(std::move(encoding)), representative_(std::move(representative))
    {
    }

    const std::vector<int>& encoding() const { return encoding_; }
    const StableGraph& representative() const { return representative_; }
    std::string key() const;

    friend bool operator==(const GraphClass& a, const GraphClass& b) { return a.encoding_ == b.encoding_; }
    friend std::strong_ordering operator<=>(const GraphClass& a, const GraphClass& b)
    {
        return a.encoding_ <=> b.encoding_;
    }

private:
    std::vector<int> encoding_;
    StableGraph representative_;
};

GraphClass canonical_form(const StableGraph& g);

struct GraphClassHash {
    std::size_t operator()(const GraphClass& c) const;
};

struct Automorphism {
    std::vector<int> vertex_perm;
    std::vector<int> half_edge_perm;

    std::vector<int> edge_perm() const;
    Automorphism compose(const Automorphism& inner) const;
    friend bool operator==(const Automorphism&, const Automorphism&) = default;
    friend auto operator<=>(const Automorphism&, const Automorphism&) = default;
};

struct AutomorphismGroup {
    std::vector<Automorphism> generators;
    std::vector<Automorphism> elements;

    std::size_t order() const { return elements.size(); }
};

/// All vertex/half-edge permutations preserving incidence, weights and each
/// labelled tail. Half-edges of a loop may be exchanged.
AutomorphismGroup automorphisms(const StableGraph& g);

/// Compact one-line rendering, e.g. "v0(g1;1,2) v1(g0;3) | 0-1".
std::string describe(const StableGraph& g);

} // namespace stratglue::graphs
