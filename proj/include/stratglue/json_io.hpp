#pragma once

#include "stratglue/dm_strata.hpp"
#include "stratglue/enumeration.hpp"
#include "stratglue/gluing_engine.hpp"
#include "stratglue/linear_strata.hpp"
#include "stratglue/plumbing.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stratglue::io {

using nlohmann::json;

json graph_json(const graphs::StableGraph& g);
json class_json(const graphs::GraphClass& c);
json classes_json(const std::vector<graphs::GraphClass>& classes);
json poset_json(const graphs::StrataPoset& p);

/// Subsets are sorted arrays of 1-based coordinates.
json subset_json(strata::Subset s);
strata::Subset subset_from_json(const json& j, int m);

/// {m, field, classes, order?, scale?} as read from a file.
struct StratificationInput {
    int m = 0;
    strata::Field field = strata::Field::Real;
    std::vector<std::vector<strata::Subset>> classes;
    std::optional<std::vector<std::pair<int, int>>> order;
    std::vector<Rational> scale;
};

/// Throws Error on malformed input.
StratificationInput stratification_from_json(const json& j);
json stratification_json(int m, strata::Field field, const std::vector<std::vector<strata::Subset>>& classes);
json validation_json(const strata::ValidationReport& r);

json point_json(const strata::Point& p, strata::Field field);
json atlas_report_json(const glue::LinearModel& model, const glue::AtlasReport& r);

json horocycle_json(const plumbing::HorocycleStructure& h);
json fixture_json(const plumbing::PlumbingFixture& f);

json dm_report_json(int g, int n, const std::vector<dm::ClassReport>& reports);

} // namespace stratglue::io
