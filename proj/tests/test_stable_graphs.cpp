#include "oracles.hpp"
#include "stratglue/error.hpp"
#include "stratglue/stable_graph.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

using namespace stratglue;
using namespace stratglue::graphs;

namespace {

StableGraph relabel(const StableGraph& g, const std::vector<int>& sigma, bool reverse_edges, bool flip)
{
    std::vector<int> weights(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v) weights[sigma[v]] = g.weight(static_cast<int>(v));
    std::vector<Edge> edges;
    for (const Edge& e : g.edges()) {
        edges.push_back(flip ? Edge{sigma[e.b], sigma[e.a]} : Edge{sigma[e.a], sigma[e.b]});
    }
    if (reverse_edges) std::reverse(edges.begin(), edges.end());
    std::vector<int> tails;
    for (int v : g.tails()) tails.push_back(sigma[v]);
    return StableGraph(weights, edges, tails);
}

} // namespace

TEST_CASE("genus counts weights plus cycles")
{
    CHECK(genus(StableGraph({2}, {}, {})) == 2);
    CHECK(genus(StableGraph({0}, {{0, 0}}, {})) == 1);
    const StableGraph banana({1, 0}, {{0, 1}, {0, 1}}, {});
    CHECK(genus(banana) == 2);
    CHECK(oracle::cycle_rank(banana) == 1);
    CHECK_THROWS_AS(genus(StableGraph({0, 0}, {}, {0, 0, 1, 1})), ConnectivityError);
}

TEST_CASE("stability inequality")
{
    CHECK(is_stable(StableGraph::single_vertex(0, 3)));
    CHECK_FALSE(is_stable(StableGraph::single_vertex(0, 2)));
    CHECK_FALSE(is_stable(StableGraph::single_vertex(1, 0)));
    CHECK(is_stable(StableGraph::single_vertex(1, 1)));
}

TEST_CASE("dimension")
{
    CHECK(dimension(StableGraph::single_vertex(1, 1)) == 1);
    CHECK(dimension(StableGraph({0}, {{0, 0}}, {0})) == 0);
    CHECK(dimension(StableGraph::single_vertex(2, 0)) == 3);
    CHECK_THROWS_AS(dimension(StableGraph::single_vertex(0, 2)), StabilityError);
    // Sum of local dimensions.
    const StableGraph g({1, 0}, {{0, 1}}, {1, 1});
    CHECK(dimension(g) == (3 * 1 - 3 + 1) + (3 * 0 - 3 + 3));
}

TEST_CASE("contraction")
{
    const StableGraph loop({1}, {{0, 0}}, {0});
    CHECK(contract(loop, std::vector<int>{}) == loop);
    const StableGraph merged = contract(loop, std::vector<int>{0});
    CHECK(merged == StableGraph::single_vertex(2, 1));

    const StableGraph bridge({1, 0}, {{0, 1}}, {0, 1, 1});
    const StableGraph c = contract(bridge, std::vector<int>{0});
    CHECK(c.num_vertices() == 1);
    CHECK(c.weight(0) == 1);
    CHECK(c.num_tails() == 3);
    CHECK(genus(c) == genus(bridge));

    CHECK_THROWS_AS(contract(bridge, std::vector<int>{3}), EdgeError);
}

TEST_CASE("contraction is order independent and composes")
{
    // Triangle with a doubled side and a loop, genus 3 + weight.
    const StableGraph g({0, 1, 0}, {{0, 1}, {1, 2}, {2, 0}, {0, 2}, {1, 1}}, {0, 1, 2});
    REQUIRE(is_stable(g));
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        std::vector<int> d;
        for (int e = 0; e < 5; ++e) {
            if (mask & (1u << e)) d.push_back(e);
        }
        const auto forward = contract(g, d);
        std::vector<int> rev(d.rbegin(), d.rend());
        CHECK(canonical_form(contract(g, rev)) == canonical_form(forward));
        CHECK(genus(forward) == genus(g));
        CHECK(is_stable(forward));
        CHECK(dimension(forward) == dimension(g) + static_cast<int>(d.size()));

        for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
            const auto first = contract_mask(g, sub);
            std::vector<int> rest;
            for (int e = 0; e < 5; ++e) {
                if ((mask & ~sub) & (1u << e)) rest.push_back(first.edge_image[e]);
            }
            CHECK(canonical_form(contract(first.graph, rest)) == canonical_form(forward));
            if (sub == 0) break;
        }
    }
}

TEST_CASE("canonical form is a congruence")
{
    const StableGraph a({0, 1}, {{0, 1}}, {0, 0});
    const StableGraph b({1, 0}, {{1, 0}}, {1, 1});
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(canonical_form(StableGraph({0}, {{0, 0}}, {0})) != canonical_form(StableGraph({1, 0}, {{0, 1}}, {1})));

    // Relabelling all tails of the (0,4) one-edge graph gives the three splits.
    std::set<GraphClass> splits;
    std::vector<int> perm{0, 1, 2, 3};
    do {
        std::vector<int> tails(4);
        for (int label = 0; label < 4; ++label) tails[perm[label]] = label < 2 ? 0 : 1;
        splits.insert(canonical_form(StableGraph({0, 0}, {{0, 1}}, tails)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(splits.size() == 3);
}

TEST_CASE("canonical form agrees with brute-force isomorphism on random graphs")
{
    std::mt19937 rng(20261016);
    std::vector<StableGraph> pool;
    for (int trial = 0; trial < 400; ++trial) {
        const int nv = 1 + static_cast<int>(rng() % 5);
        const int ne = nv - 1 + static_cast<int>(rng() % 3);
        const int n = static_cast<int>(rng() % 3);
        std::vector<int> weights(static_cast<std::size_t>(nv));
        for (int& w : weights) w = static_cast<int>(rng() % 2);
        std::vector<Edge> edges;
        for (int v = 1; v < nv; ++v) edges.push_back({static_cast<int>(rng() % v), v});
        while (static_cast<int>(edges.size()) < ne) {
            edges.push_back({static_cast<int>(rng() % nv), static_cast<int>(rng() % nv)});
        }
        std::vector<int> tails(static_cast<std::size_t>(n));
        for (int& t : tails) t = static_cast<int>(rng() % nv);
        pool.emplace_back(weights, edges, tails);

        std::vector<int> sigma(static_cast<std::size_t>(nv));
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), rng);
        const StableGraph h = relabel(pool.back(), sigma, rng() % 2, rng() % 2);
        REQUIRE(oracle::isomorphic(pool.back(), h));
        CHECK(canonical_form(h) == canonical_form(pool.back()));
        CHECK(oracle::isomorphic(canonical_form(h).representative(), h));
    }
    int disagreements = 0;
    for (std::size_t i = 0; i < pool.size(); i += 7) {
        for (std::size_t j = i + 1; j < pool.size(); j += 3) {
            const bool same = canonical_form(pool[i]) == canonical_form(pool[j]);
            if (same != oracle::isomorphic(pool[i], pool[j])) ++disagreements;
        }
    }
    CHECK(disagreements == 0);
}

TEST_CASE("automorphism groups")
{
    CHECK(automorphisms(StableGraph::single_vertex(0, 3)).order() == 1);
    const StableGraph two_loops({0}, {{0, 0}, {0, 0}}, {});
    CHECK(automorphisms(two_loops).order() == 8);
    CHECK(oracle::automorphism_count(two_loops) == 8);
    const StableGraph dumbbell({1, 1}, {{0, 1}}, {});
    CHECK(automorphisms(dumbbell).order() == 2);
    CHECK(oracle::automorphism_count(dumbbell) == 2);

    const StableGraph banana({0, 0}, {{0, 1}, {0, 1}, {0, 1}}, {});
    const auto group = automorphisms(banana);
    CHECK(group.order() == oracle::automorphism_count(banana));
    CHECK(group.order() == 12);
    // Generators regenerate the whole group.
    std::set<Automorphism> closure(group.elements.begin(), group.elements.end());
    for (const auto& a : group.elements) {
        for (const auto& s : group.generators) CHECK(closure.count(s.compose(a)) == 1);
    }
    CHECK(group.generators.size() <= group.order());
}

TEST_CASE("automorphism order matches brute force on small graphs")
{
    const std::vector<StableGraph> graphs{
        StableGraph({0, 0}, {{0, 1}, {0, 1}}, {0, 1}),
        StableGraph({0, 0}, {{0, 0}, {0, 1}, {1, 1}}, {}),
        StableGraph({0, 0, 0}, {{0, 1}, {1, 2}, {2, 0}}, {}),
        StableGraph({0}, {{0, 0}}, {0, 0}),
        StableGraph({0, 0}, {{0, 0}, {0, 1}}, {1, 1}),
    };
    for (const auto& g : graphs) {
        CHECK(automorphisms(g).order() == oracle::automorphism_count(g));
    }
}
