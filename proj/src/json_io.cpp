#include "stratglue/json_io.hpp"

#include "stratglue/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace stratglue::io {

json graph_json(const graphs::StableGraph& g)
{
    json vertices = json::array();
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
        vertices.push_back({{"id", v}, {"genus", g.weight(static_cast<int>(v))}});
    }
    json edges = json::array();
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
        const auto& edge = g.edge(static_cast<int>(e));
        edges.push_back({{"half_edges", {2 * e, 2 * e + 1}}, {"vertices", {edge.a, edge.b}}});
    }
    json tails = json::array();
    for (std::size_t i = 0; i < g.num_tails(); ++i) {
        tails.push_back({{"label", i + 1}, {"vertex", g.tail_vertex(static_cast<int>(i) + 1)}});
    }
    return {{"vertices", vertices}, {"edges", edges}, {"tails", tails}};
}

json class_json(const graphs::GraphClass& c)
{
    const auto& g = c.representative();
    return {{"key", c.key()},
            {"describe", graphs::describe(g)},
            {"edges", g.num_edges()},
            {"dimension", graphs::dimension(g)},
            {"graph", graph_json(g)}};
}

json classes_json(const std::vector<graphs::GraphClass>& classes)
{
    json out = json::array();
    for (std::size_t i = 0; i < classes.size(); ++i) {
        json c = class_json(classes[i]);
        c["index"] = i;
        out.push_back(std::move(c));
    }
    return out;
}

json poset_json(const graphs::StrataPoset& p)
{
    json elements = classes_json(p.elements);
    for (std::size_t i = 0; i < p.size(); ++i) elements[i]["layer"] = p.layer_of(static_cast<int>(i)) + 1;
    json covers = json::array();
    for (const auto& [lo, hi] : p.covers) covers.push_back({lo, hi});
    return {{"genus", p.genus}, {"tails", p.tails}, {"top", p.top()},
            {"elements", elements}, {"covers", covers}, {"layers", p.layers}};
}

json subset_json(strata::Subset s)
{
    json out = json::array();
    for (int i = 0; i < 32; ++i) {
        if ((s >> i) & 1) out.push_back(i + 1);
    }
    return out;
}

strata::Subset subset_from_json(const json& j, int m)
{
    if (!j.is_array()) throw PartitionError("subset must be an array of coordinates");
    strata::Subset out = 0;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw PartitionError("coordinate must be an integer");
        const int i = x.get<int>();
        if (i < 1 || i > m) throw PartitionError("coordinate " + std::to_string(i) + " out of range 1.." + std::to_string(m));
        const strata::Subset bit = strata::Subset{1} << (i - 1);
        if (out & bit) throw PartitionError("coordinate " + std::to_string(i) + " repeated in a subset");
        out |= bit;
    }
    return out;
}

namespace {

Rational rational_from_json(const json& j)
{
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return parse_rational(j.dump());
    throw DomainError("expected a number");
}

json rational_json(const Rational& q) { return rational_text(q); }

std::string field_text(strata::Field f) { return f == strata::Field::Complex ? "C" : "R"; }

} // namespace

StratificationInput stratification_from_json(const json& j)
{
    if (!j.is_object()) throw PartitionError("stratification must be a JSON object");
    StratificationInput out;
    if (!j.contains("m") || !j["m"].is_number_integer()) throw PartitionError("missing integer field 'm'");
    out.m = j["m"].get<int>();
    if (out.m < 0 || out.m > 16) throw PartitionError("m must lie in 0..16");
    const std::string field = j.value("field", std::string("R"));
    if (field == "R") {
        out.field = strata::Field::Real;
    } else if (field == "C") {
        out.field = strata::Field::Complex;
    } else {
        throw PartitionError("field must be \"R\" or \"C\"");
    }
    if (!j.contains("classes") || !j["classes"].is_array()) throw PartitionError("missing array field 'classes'");
    for (const auto& cls : j["classes"]) {
        if (!cls.is_array()) throw PartitionError("each class must be an array of subsets");
        std::vector<strata::Subset> members;
        for (const auto& s : cls) members.push_back(subset_from_json(s, out.m));
        out.classes.push_back(std::move(members));
    }
    if (j.contains("order")) {
        std::vector<std::pair<int, int>> order;
        for (const auto& p : j["order"]) {
            if (!p.is_array() || p.size() != 2) throw PartitionError("order entries are [lower, upper] pairs");
            order.emplace_back(p[0].get<int>(), p[1].get<int>());
        }
        out.order = std::move(order);
    }
    if (j.contains("scale")) {
        for (const auto& x : j["scale"]) out.scale.push_back(rational_from_json(x));
    }
    return out;
}

json stratification_json(int m, strata::Field field, const std::vector<std::vector<strata::Subset>>& classes)
{
    json cls = json::array();
    for (const auto& members : classes) {
        json c = json::array();
        for (auto s : members) c.push_back(subset_json(s));
        cls.push_back(std::move(c));
    }
    return {{"m", m}, {"field", field_text(field)}, {"classes", cls}};
}

json validation_json(const strata::ValidationReport& r)
{
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"kind", x.kind}, {"detail", x.detail}});
    return {{"valid", r.valid()}, {"violations", v}};
}

json point_json(const strata::Point& p, strata::Field field)
{
    json out = json::array();
    for (const auto& c : p) {
        if (field == strata::Field::Complex) {
            out.push_back({rational_json(c.re), rational_json(c.im)});
        } else {
            out.push_back(rational_json(c.re));
        }
    }
    return out;
}

json atlas_report_json(const glue::LinearModel& model, const glue::AtlasReport& r)
{
    const auto field = model.field();
    json strata_out = json::array();
    for (std::size_t a = 0; a < r.strata.size(); ++a) {
        const auto& s = r.strata[a];
        const auto& d = r.atlas[a];
        json bundle = json::object();
        for (const auto& [beta, w] : d->bundle) bundle[std::to_string(beta)] = glue::word_text(w);
        json members = json::array();
        for (auto x : model.strat.members(static_cast<int>(a))) members.push_back(subset_json(x));
        strata_out.push_back({{"index", a},
                              {"members", members},
                              {"layer", s.layer},
                              {"dimension", model.stratum_dim(static_cast<int>(a))},
                              {"fibre_dimension", model.fibre_dim(static_cast<int>(a))},
                              {"eps", rational_json(s.eps)},
                              {"phi", glue::word_text(d->phi)},
                              {"bundle", bundle},
                              {"sources", s.sources},
                              {"frontier", s.frontier},
                              {"boundary_type", s.boundary_type},
                              {"extension_agrees", s.extension_agrees},
                              {"extension_samples", s.extension_samples}});
    }
    json matrix = json::array();
    for (const auto& row : r.compatible) {
        json line = json::array();
        for (bool b : row) line.push_back(b);
        matrix.push_back(std::move(line));
    }
    json incompatible = json::array();
    for (const auto& w : r.incompatible) {
        incompatible.push_back({{"alpha", w.alpha}, {"beta", w.beta}, {"witness", point_json(w.point, field)}});
    }
    json separation = {{"holds", r.separation}};
    if (r.separation_witness) {
        separation["witness"] = {{"alpha", r.separation_witness->alpha},
                                 {"beta", r.separation_witness->beta},
                                 {"point", point_json(r.separation_witness->point, field)}};
    }
    json cover = {{"holds", r.cover}, {"grid_points", r.grid_points}};
    if (r.uncovered) cover["witness"] = point_json(*r.uncovered, field);
    return {{"model", stratification_json(model.dim(), field, model.strat.classes())},
            {"passes", r.passes},
            {"layers", r.layers},
            {"strata", strata_out},
            {"compatibility", {{"all", r.all_compatible()}, {"matrix", matrix}, {"failures", incompatible}}},
            {"separation", separation},
            {"cover", cover},
            {"ok", r.ok()}};
}

json horocycle_json(const plumbing::HorocycleStructure& h)
{
    json coefficients = json::array();
    for (const auto& c : h.coefficients) coefficients.push_back({rational_json(c.re), rational_json(c.im)});
    return {{"scale", rational_json(h.scale)}, {"delta", h.delta}, {"coefficients", coefficients}};
}

json fixture_json(const plumbing::PlumbingFixture& f)
{
    return {{"t", {rational_json(f.t.re), rational_json(f.t.im)}}, {"delta", rational_json(f.delta)}};
}

json dm_report_json(int g, int n, const std::vector<dm::ClassReport>& reports)
{
    json classes = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        ok = ok && r.ok();
        json partition = json::array();
        for (std::size_t c = 0; c < r.edges.classes.size(); ++c) {
            json members = json::array();
            for (auto s : r.edges.classes[c]) members.push_back(subset_json(s));
            const auto& target = r.edges.targets[c].representative();
            partition.push_back({{"target", graphs::describe(target)},
                                 {"cardinality", std::popcount(r.edges.classes[c].front())},
                                 {"target_dimension", graphs::dimension(target)},
                                 {"subsets", members}});
        }
        json violations = json::array();
        for (const auto& v : r.dimension_violations) {
            violations.push_back({{"class", v.cls}, {"cardinality", v.cardinality},
                                  {"source_dimension", v.source_dim}, {"target_dimension", v.target_dim}});
        }
        classes.push_back({{"index", i},
                           {"graph", graphs::describe(r.cls.representative())},
                           {"rank", r.rank},
                           {"dimension", r.dimension},
                           {"partition", partition},
                           {"valid", r.valid},
                           {"dimension_violations", violations},
                           {"functoriality", {{"pairs", r.functoriality.pairs}, {"ok", r.functoriality.ok()}}},
                           {"equivariance", {{"group_order", r.equivariance.group_order},
                                             {"checks", r.equivariance.checks},
                                             {"ok", r.equivariance.ok()}}},
                           {"atlas", {{"passes", r.atlas_passes}, {"ok", r.atlas_ok}}},
                           {"ok", r.ok()}});
    }
    return {{"genus", g}, {"tails", n}, {"classes", classes}, {"ok", ok}};
}

} // namespace stratglue::io
