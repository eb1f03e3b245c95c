#include "stratglue/dm_strata.hpp"

#include "stratglue/enumeration.hpp"

#include <algorithm>
#include <bit>

namespace stratglue::dm {

int gluing_bundle_rank(const StableGraph& g) { return static_cast<int>(g.num_edges()); }

EdgeStratification edge_stratification(const StableGraph& g)
{
    const int m = static_cast<int>(g.num_edges());
    std::map<GraphClass, std::vector<Subset>> groups;
    for (Subset mask = 0; mask < (Subset{1} << m); ++mask) {
        groups[graphs::canonical_form(graphs::contract_mask(g, mask).graph)].push_back(mask);
    }
    std::vector<std::pair<GraphClass, std::vector<Subset>>> sorted(groups.begin(), groups.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return std::popcount(a.second.front()) < std::popcount(b.second.front());
    });
    std::vector<GraphClass> targets;
    std::vector<std::vector<Subset>> classes;
    for (auto& [target, members] : sorted) {
        targets.push_back(target);
        classes.push_back(std::move(members));
    }
    auto strat = strata::LinearStratification(m, strata::Field::Complex, classes);
    return {g, std::move(targets), std::move(classes), std::move(strat)};
}

std::vector<DimensionViolation> verify_dimension_matching(const EdgeStratification& e)
{
    std::vector<DimensionViolation> out;
    const int source = graphs::dimension(e.graph);
    for (std::size_t c = 0; c < e.classes.size(); ++c) {
        const int target = graphs::dimension(e.targets[c].representative());
        for (Subset s : e.classes[c]) {
            const int k = std::popcount(s);
            if (source + k != target) out.push_back({static_cast<int>(c), k, source, target});
        }
    }
    return out;
}

FunctorialityReport contraction_functoriality(const StableGraph& g)
{
    FunctorialityReport out;
    const int m = static_cast<int>(g.num_edges());
    const Subset full = (Subset{1} << m) - 1;
    for (Subset outer = 0; outer <= full; ++outer) {
        const auto direct = graphs::canonical_form(graphs::contract_mask(g, outer).graph);
        // every subset of outer, including empty and outer itself
        for (Subset inner = outer;; inner = (inner - 1) & outer) {
            const auto first = graphs::contract_mask(g, inner);
            Subset rest = 0;
            for (int e = 0; e < m; ++e) {
                if (((outer & ~inner) >> e) & 1) rest |= Subset{1} << first.edge_image[static_cast<std::size_t>(e)];
            }
            ++out.pairs;
            if (!(graphs::canonical_form(graphs::contract_mask(first.graph, rest).graph) == direct)) {
                out.failures.push_back({inner, outer});
            }
            if (inner == 0) break;
        }
    }
    return out;
}

EquivarianceReport aut_equivariance(const EdgeStratification& e)
{
    EquivarianceReport out;
    const auto group = graphs::automorphisms(e.graph);
    out.group_order = group.order();
    const int m = static_cast<int>(e.graph.num_edges());
    for (const auto& a : group.elements) {
        const auto perm = a.edge_perm();
        for (std::size_t c = 0; c < e.classes.size(); ++c) {
            for (Subset s : e.classes[c]) {
                Subset image = 0;
                for (int k = 0; k < m; ++k) {
                    if ((s >> k) & 1) image |= Subset{1} << perm[static_cast<std::size_t>(k)];
                }
                ++out.checks;
                if (e.strat.class_of(image) != static_cast<int>(c)) out.failures.push_back({static_cast<int>(c), s});
            }
        }
    }
    return out;
}

namespace {

using ClassList = std::vector<std::vector<Subset>>;

/// Smallest relabelling of the class list over all coordinate permutations.
ClassList permutation_key(const strata::LinearStratification& s)
{
    const int m = s.dim();
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[i] = i;
    ClassList best;
    do {
        ClassList relabelled;
        for (const auto& members : s.classes()) {
            std::vector<Subset> moved;
            for (Subset x : members) {
                Subset y = 0;
                for (int i = 0; i < m; ++i) {
                    if ((x >> i) & 1) y |= Subset{1} << perm[i];
                }
                moved.push_back(y);
            }
            std::sort(moved.begin(), moved.end());
            relabelled.push_back(std::move(moved));
        }
        std::sort(relabelled.begin(), relabelled.end());
        if (best.empty() || relabelled < best) best = std::move(relabelled);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

const glue::AtlasReport& AtlasCache::get(const strata::LinearStratification& s)
{
    // Unit scale and a symmetric grid make the verdict invariant under coordinate permutations.
    auto key = permutation_key(s);
    auto it = reports_.find(key);
    if (it == reports_.end()) {
        glue::AtlasOptions options;
        options.grid = grid_;
        const auto model = glue::linear_model(strata::LinearStratification(s.dim(), s.field(), key));
        it = reports_.emplace(std::move(key), glue::build_atlas(model, options)).first;
    }
    return it->second;
}

std::vector<ClassReport> dm_report(int g, int n, AtlasCache& cache)
{
    std::vector<ClassReport> out;
    for (const auto& cls : graphs::enumerate_stable_graphs(g, n)) {
        const auto& graph = cls.representative();
        auto edges = edge_stratification(graph);
        ClassReport r{cls, 0, 0, edges, true, {}, {}, {}, true, 0};
        r.rank = gluing_bundle_rank(graph);
        r.dimension = graphs::dimension(graph);
        r.valid = strata::validate(edges.strat.dim(), edges.classes).valid();
        r.dimension_violations = verify_dimension_matching(edges);
        r.functoriality = contraction_functoriality(graph);
        r.equivariance = aut_equivariance(edges);
        if (r.valid) {
            const auto& atlas = cache.get(edges.strat);
            r.atlas_ok = atlas.ok();
            r.atlas_passes = atlas.passes;
        } else {
            r.atlas_ok = false;
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace stratglue::dm
