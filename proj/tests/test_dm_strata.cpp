#include "stratglue/dm_strata.hpp"
#include "stratglue/enumeration.hpp"

#include <catch_amalgamated.hpp>

using namespace stratglue;
using namespace stratglue::dm;
using graphs::Edge;

namespace {

StableGraph loop_graph() { return StableGraph({0}, {Edge{0, 0}}, {0}); }
StableGraph two_loops() { return StableGraph({0}, {Edge{0, 0}, Edge{0, 0}}, {}); }
// weight-1 vertex joined by a separating edge to a weight-0 vertex with a loop
StableGraph bridge_and_loop() { return StableGraph({1, 0}, {Edge{0, 1}, Edge{1, 1}}, {}); }

} // namespace

TEST_CASE("gluing bundle rank")
{
    CHECK(gluing_bundle_rank(StableGraph::single_vertex(0, 4)) == 0);
    CHECK(gluing_bundle_rank(loop_graph()) == 1);
    CHECK(gluing_bundle_rank(two_loops()) == 2);
}

TEST_CASE("edge stratifications of small graphs")
{
    const auto loop = edge_stratification(loop_graph());
    CHECK(loop.classes == std::vector<std::vector<Subset>>{{0}, {1}});
    CHECK(loop.strat.layers().size() == 2);
    CHECK(strata::validate(1, loop.classes).valid());

    const auto two = edge_stratification(two_loops());
    CHECK(two.classes == std::vector<std::vector<Subset>>{{0}, {1, 2}, {3}});
    CHECK(strata::validate(2, two.classes).valid());

    const auto bridge = edge_stratification(bridge_and_loop());
    REQUIRE(bridge.classes.size() == 4);
    CHECK(bridge.classes[1].size() == 1);
    CHECK(bridge.classes[2].size() == 1);
    CHECK(strata::validate(2, bridge.classes).valid());
}

TEST_CASE("dimension matching")
{
    CHECK(verify_dimension_matching(edge_stratification(loop_graph())).empty());
    CHECK(graphs::dimension(loop_graph()) == 0);
    for (const auto& cls : graphs::enumerate_stable_graphs(0, 5)) {
        const auto& g = cls.representative();
        CHECK(verify_dimension_matching(edge_stratification(g)).empty());
        if (g.num_edges() == 1) CHECK(graphs::dimension(g) == 1);
    }
}

TEST_CASE("functoriality and equivariance on small classes")
{
    CHECK(aut_equivariance(edge_stratification(StableGraph::single_vertex(1, 1))).ok());
    const auto two = aut_equivariance(edge_stratification(two_loops()));
    CHECK(two.group_order == 8);
    CHECK(two.ok());
    const auto parallel = aut_equivariance(edge_stratification(StableGraph({1, 1}, {Edge{0, 1}, Edge{0, 1}}, {})));
    CHECK(parallel.group_order > 1);
    CHECK(parallel.ok());

    for (auto [g, n] : {std::pair{0, 4}, {1, 1}, {1, 2}, {2, 0}}) {
        for (const auto& cls : graphs::enumerate_stable_graphs(g, n)) {
            const auto report = contraction_functoriality(cls.representative());
            CHECK(report.ok());
            CHECK(report.pairs > 0);
            CHECK(aut_equivariance(edge_stratification(cls.representative())).ok());
        }
    }
}

TEST_CASE("reports for (1,1) and (0,4)")
{
    AtlasCache cache(dm_grid());
    for (auto [g, n] : {std::pair{1, 1}, {0, 4}}) {
        const auto reports = dm_report(g, n, cache);
        for (const auto& r : reports) {
            CHECK(r.ok());
            CHECK(r.atlas_passes == r.edges.strat.layers().size());
        }
    }
}
