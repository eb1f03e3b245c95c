#pragma once

#include "stratglue/gluing_engine.hpp"
#include "stratglue/linear_strata.hpp"
#include "stratglue/stable_graph.hpp"

#include <map>
#include <string>
#include <vector>

namespace stratglue::dm {

using graphs::GraphClass;
using graphs::StableGraph;
using strata::Subset;

/// Rank of the sum of L_e^+ (x) L_e^- over the edges: one per edge.
int gluing_bundle_rank(const StableGraph& g);

/// Subsets of E(graph) grouped by the class of the contraction, ordered by
/// (cardinality, target encoding). Edge e is coordinate e+1.
struct EdgeStratification {
    StableGraph graph;
    std::vector<GraphClass> targets;
    std::vector<std::vector<Subset>> classes;
    strata::LinearStratification strat;
};

EdgeStratification edge_stratification(const StableGraph& g);

struct DimensionViolation {
    int cls;
    int cardinality;
    int source_dim;
    int target_dim;
};

std::vector<DimensionViolation> verify_dimension_matching(const EdgeStratification& e);

struct FunctorialityFailure {
    Subset inner;
    Subset outer;
};

/// Every nested pair I ⊆ I' of edge sets, contracting I' at once versus I then the rest.
struct FunctorialityReport {
    std::size_t pairs = 0;
    std::vector<FunctorialityFailure> failures;
    bool ok() const { return failures.empty(); }
};

FunctorialityReport contraction_functoriality(const StableGraph& g);

struct EquivarianceReport {
    std::size_t group_order = 0;
    std::size_t checks = 0;
    std::vector<std::pair<int, Subset>> failures;
    bool ok() const { return failures.empty(); }
};

EquivarianceReport aut_equivariance(const EdgeStratification& e);

/// Atlas verdicts keyed by the class list up to coordinate permutation, so
/// equivalent stratifications are built once.
class AtlasCache {
public:
    explicit AtlasCache(glue::GridSpec grid) : grid_(grid) {}
    const glue::AtlasReport& get(const strata::LinearStratification& s);

private:
    glue::GridSpec grid_;
    std::map<std::vector<std::vector<Subset>>, glue::AtlasReport> reports_;
};

/// Complex grid used for edge stratifications.
inline glue::GridSpec dm_grid() { return glue::GridSpec{21, 3}; }

struct ClassReport {
    GraphClass cls;
    int rank = 0;
    int dimension = 0;
    EdgeStratification edges;
    bool valid = true;
    std::vector<DimensionViolation> dimension_violations;
    FunctorialityReport functoriality;
    EquivarianceReport equivariance;
    bool atlas_ok = true;
    std::size_t atlas_passes = 0;

    bool ok() const
    {
        return valid && dimension_violations.empty() && functoriality.ok() && equivariance.ok() && atlas_ok;
    }
};

/// All checks for every class of (g, n) in enumeration order.
std::vector<ClassReport> dm_report(int g, int n, AtlasCache& cache);

} // namespace stratglue::dm
