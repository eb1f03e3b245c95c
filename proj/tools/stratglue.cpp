#include "stratglue/dm_strata.hpp"
#include "stratglue/enumeration.hpp"
#include "stratglue/error.hpp"
#include "stratglue/gluing_engine.hpp"
#include "stratglue/json_io.hpp"
#include "stratglue/linear_strata.hpp"
#include "stratglue/plumbing.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace stratglue;
using io::json;

namespace {

// thrown for unreadable input files; maps to the usage exit code
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

int graphs_enumerate(int g, int n, bool as_json, bool count)
{
    const auto classes = graphs::enumerate_stable_graphs(g, n);
    if (count) {
        std::cout << classes.size() << "\n";
    } else if (as_json) {
        std::cout << io::classes_json(classes).dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const auto& rep = classes[i].representative();
            std::cout << i << "  edges " << rep.num_edges() << "  dim " << graphs::dimension(rep) << "  "
                      << graphs::describe(rep) << "\n";
        }
    }
    return 0;
}

int graphs_poset(int g, int n, bool dot, bool as_json)
{
    const auto p = graphs::build_poset(g, n);
    if (dot) {
        std::cout << graphs::poset_dot(p);
        return 0;
    }
    if (as_json) {
        std::cout << io::poset_json(p).dump(2) << "\n";
        return 0;
    }
    std::cout << "classes " << p.size() << ", top " << p.top() << "\n";
    for (std::size_t k = 0; k < p.layers.size(); ++k) {
        std::cout << "S" << k + 1 << ":";
        for (int a : p.layers[k]) std::cout << " " << a;
        std::cout << "\n";
    }
    for (const auto& [lo, hi] : p.covers) std::cout << lo << " -> " << hi << "\n";
    return 0;
}

int strata_validate(const std::string& path, bool as_json)
{
    const auto input = io::stratification_from_json(read_json(path));
    const auto report = strata::validate(input.m, input.classes, input.order);
    if (as_json) {
        std::cout << io::validation_json(report).dump(2) << "\n";
        return report.valid() ? 0 : 1;
    }
    if (!report.valid()) {
        std::cout << "invalid\n";
        for (const auto& v : report.violations) std::cout << "  " << v.kind << ": " << v.detail << "\n";
        return 1;
    }
    const strata::LinearStratification s(input.m, input.field, input.classes);
    std::cout << "valid: " << s.size() << " classes, " << s.layers().size() << " layers\n";
    for (std::size_t a = 0; a < s.size(); ++a) {
        std::cout << "  " << a << ":";
        for (auto x : s.members(static_cast<int>(a))) std::cout << " " << strata::subset_text(x);
        std::cout << "\n";
    }
    return 0;
}

int glue_run(const std::string& path, const std::string& report_path)
{
    const auto input = io::stratification_from_json(read_json(path));
    const auto check = strata::validate(input.m, input.classes, input.order);
    if (!check.valid()) {
        std::cout << "invalid model\n";
        for (const auto& v : check.violations) std::cout << "  " << v.kind << ": " << v.detail << "\n";
        return 1;
    }
    const auto model =
        glue::linear_model(strata::LinearStratification(input.m, input.field, input.classes), input.scale);
    glue::AtlasOptions options;
    options.grid = glue::grid_from_environment();
    const auto report = glue::build_atlas(model, options);

    std::cout << "model m=" << model->dim() << " field=" << (model->field() == strata::Field::Complex ? "C" : "R")
              << " strata=" << model->strat.size() << " layers=" << model->layers.size() << "\n";
    std::cout << "passes " << report.passes << "\n";
    for (const auto& s : report.strata) {
        std::cout << "  stratum " << s.index << " layer " << s.layer << " eps " << rational_text(s.eps)
                  << " phi " << glue::word_text(report.atlas[s.index]->phi)
                  << (s.frontier ? "" : " [frontier fails]")
                  << (s.boundary_type ? "" : " [boundary not of boundary type]")
                  << (s.extension_agrees ? "" : " [extension disagrees]") << "\n";
    }
    std::cout << "compatibility " << (report.all_compatible() ? "all true" : "FAILS") << "\n";
    std::cout << "separation " << (report.separation ? "holds" : "FAILS") << " on " << report.grid_points
              << " grid points\n";
    std::cout << "cover " << (report.cover ? "holds" : "FAILS") << "\n";
    std::cout << (report.ok() ? "ok" : "not ok") << "\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        if (!out) throw InputError("cannot write " + report_path);
        out << io::atlas_report_json(*model, report).dump(2) << "\n";
    }
    return report.ok() ? 0 : 1;
}

int plumb_run(const std::string& t_text, const std::string& delta_text, const std::string& z_text)
{
    const plumbing::PlumbingFixture f{parse_complex(t_text), parse_rational(delta_text)};
    plumbing::check_fixture(f);
    const Complex z = parse_complex(z_text);
    if (!plumbing::in_annulus(z, f)) {
        std::cout << "annulus |t|/delta < |z| < delta: fails for z = " << format_complex(z) << "\n";
        return 1;
    }
    const Complex w = plumbing::plumb(z, f);
    std::cout << "w = " << format_complex(w) << "\n";
    std::cout << "annulus |t|/delta < |z| < delta: holds\n";
    std::cout << "z*w = " << format_complex(z * w) << "\n";
    return 0;
}

int dm_report(int g, int n, bool as_json)
{
    dm::AtlasCache cache(dm::dm_grid());
    const auto reports = dm::dm_report(g, n, cache);
    bool ok = true;
    for (const auto& r : reports) ok = ok && r.ok();
    if (as_json) {
        std::cout << io::dm_report_json(g, n, reports).dump(2) << "\n";
        return ok ? 0 : 1;
    }
    std::cout << "(g,n) = (" << g << "," << n << "): " << reports.size() << " classes\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        std::cout << i << "  " << graphs::describe(r.cls.representative()) << "\n";
        std::cout << "   rank " << r.rank << "  dim " << r.dimension << "  |Aut| " << r.equivariance.group_order << "\n";
        for (std::size_t c = 0; c < r.edges.classes.size(); ++c) {
            std::cout << "   class " << c << ":";
            for (auto s : r.edges.classes[c]) std::cout << " " << strata::subset_text(s);
            const auto& target = r.edges.targets[c].representative();
            std::cout << "  -> " << graphs::describe(target) << " (dim " << graphs::dimension(target) << ")\n";
        }
        std::cout << "   validation " << (r.valid ? "ok" : "FAILS") << ", dimensions "
                  << (r.dimension_violations.empty() ? "ok" : "FAIL") << ", functoriality "
                  << (r.functoriality.ok() ? "ok" : "FAIL") << " (" << r.functoriality.pairs << " pairs), equivariance "
                  << (r.equivariance.ok() ? "ok" : "FAIL") << ", atlas " << (r.atlas_ok ? "ok" : "FAIL") << "\n";
    }
    std::cout << (ok ? "ok" : "not ok") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"stratglue: stable graph strata, linear stratifications and gluing atlases"};
    app.require_subcommand(1);

    int g = 0;
    int n = 0;
    bool as_json = false;
    bool count = false;
    bool dot = false;
    std::string path;
    std::string report_path;
    std::string t_text, delta_text, z_text;

    auto* graphs_cmd = app.add_subcommand("graphs", "stable graph enumeration and poset export");
    graphs_cmd->require_subcommand(1);
    auto* enumerate = graphs_cmd->add_subcommand("enumerate", "list the stable graph classes of (g, n)");
    enumerate->add_option("g", g, "genus")->required();
    enumerate->add_option("n", n, "number of tails")->required();
    auto* enum_json = enumerate->add_flag("--json", as_json, "JSON output");
    enumerate->add_flag("--count", count, "print the number of classes")->excludes(enum_json);
    auto* poset = graphs_cmd->add_subcommand("poset", "contraction poset of (g, n)");
    poset->add_option("g", g, "genus")->required();
    poset->add_option("n", n, "number of tails")->required();
    auto* poset_dot_flag = poset->add_flag("--dot", dot, "Hasse diagram in DOT");
    poset->add_flag("--json", as_json, "JSON output")->excludes(poset_dot_flag);

    auto* strata_cmd = app.add_subcommand("strata", "linear stratifications");
    strata_cmd->require_subcommand(1);
    auto* validate = strata_cmd->add_subcommand("validate", "check a stratification file");
    validate->add_option("file", path, "stratification JSON")->required();
    validate->add_flag("--json", as_json, "JSON report");

    auto* glue_cmd = app.add_subcommand("glue", "gluing atlases on the coordinate model");
    glue_cmd->require_subcommand(1);
    auto* run = glue_cmd->add_subcommand("run", "build and check the layered atlas");
    run->add_option("model", path, "model JSON")->required();
    run->add_option("--report", report_path, "write the atlas report as JSON");

    auto* plumb = app.add_subcommand("plumb", "plumbing transition w = t/z");
    plumb->add_option("--t", t_text, "gluing parameter re,im")->required();
    plumb->add_option("--delta", delta_text, "disk radius")->required();
    plumb->add_option("--z", z_text, "point re,im")->required();

    auto* dm_cmd = app.add_subcommand("dm", "edge stratifications of stable graphs");
    dm_cmd->require_subcommand(1);
    auto* report = dm_cmd->add_subcommand("report", "all checks for every class of (g, n)");
    report->add_option("g", g, "genus")->required();
    report->add_option("n", n, "number of tails")->required();
    report->add_flag("--json", as_json, "JSON output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (enumerate->parsed()) return graphs_enumerate(g, n, as_json, count);
        if (poset->parsed()) return graphs_poset(g, n, dot, as_json);
        if (validate->parsed()) return strata_validate(path, as_json);
        if (run->parsed()) return glue_run(path, report_path);
        if (plumb->parsed()) return plumb_run(t_text, delta_text, z_text);
        if (report->parsed()) return dm_report(g, n, as_json);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << app.help();
    return 2;
}
