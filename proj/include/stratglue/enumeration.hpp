#pragma once

#include "stratglue/stable_graph.hpp"

#include <string>
#include <utility>
#include <vector>

namespace stratglue::graphs {

/// All isomorphism classes of stable graphs of type (g,n), sorted by edge
/// count and then by canonical encoding. The zero-edge graph comes first.
/// Throws StabilityError when 2g - 2 + n <= 0.
std::vector<GraphClass> enumerate_stable_graphs(int g, int n);

/// Contraction poset. More edges means smaller; element 0 is the top.
struct StrataPoset {
    int genus = 0;
    int tails = 0;
    std::vector<GraphClass> elements;
    /// (lower, upper) pairs where upper is a one-edge contraction of lower.
    std::vector<std::pair<int, int>> covers;
    /// S_1 first: minimal elements, then minimal elements of what remains.
    std::vector<std::vector<int>> layers;

    std::size_t size() const { return elements.size(); }
    int top() const { return 0; }
    bool leq(int a, int b) const { return up_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    bool less(int a, int b) const { return a != b && leq(a, b); }
    /// Position of a class, or -1.
    int index_of(const GraphClass& c) const;
    int layer_of(int element) const;

    std::vector<std::vector<bool>> up_;
};

StrataPoset build_poset(int g, int n);

/// Hasse diagram in DOT, nodes labelled with the graph and its dimension.
std::string poset_dot(const StrataPoset& poset);

} // namespace stratglue::graphs
