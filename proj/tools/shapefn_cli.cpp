#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "shapefn/shapefn.hpp"

using namespace shapefn;

namespace {

struct Loaded {
    Shape shape;
    std::string label;
};

Loaded load_shape(const std::string& arg) {
    if (arg.rfind("family:", 0) == 0) {
        const FamilySpec spec = parse_family_spec(arg);
        return {realize(spec), to_string(spec)};
    }
    return {io::read_polygon(arg), arg};
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        io::write_file(out, text);
}

bool is_input_error(const Error& e) {
    const std::string& c = e.code();
    return c == "degenerate polygon" || c == "non-convex polygon" || c == "closed_form_only" ||
           c == "invalid direction" || c == "empty sweep" || c == "shape_mismatch";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shape functionals of convex domains: torsion, first eigenvalue, asymmetry inequalities"};
    app.require_subcommand(1);

    std::string shape_arg, out;
    double fem_tol = 1e-6, tol = 1e-6;
    std::size_t max_triangles = FemOptions{}.max_triangles;
    std::size_t samples = 512;

    auto fem_flags = [&](CLI::App* sub) {
        sub->add_option("--fem-tol", fem_tol, "Relative solver tolerance in [1e-8, 1e-2]");
        sub->add_option("--max-triangles", max_triangles, "Triangle budget of the fine FEM level")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", out, "Output file (default: standard output)");
    };

    auto* compute = app.add_subcommand("compute", "Measurements, functionals and bounds of one shape as JSON");
    compute->add_option("--shape", shape_arg, "Polygon JSON file or family:<kind>:<params>[@res]")->required();
    compute->add_option("--samples", samples, "Inner parallel profile samples")->check(CLI::Range(16, 1 << 20));
    fem_flags(compute);

    auto* verify_cmd = app.add_subcommand("verify", "Check every inequality on one shape; exit 0 iff all pass");
    verify_cmd->add_option("--shape", shape_arg, "Polygon JSON file or family:<kind>:<params>[@res]")->required();
    verify_cmd->add_option("--tol", tol, "Tolerance floor for solver-dependent entries")->check(CLI::NonNegativeNumber);
    fem_flags(verify_cmd);

    std::string templ;
    std::vector<double> params;
    std::vector<std::string> ratios;
    auto* sweep_cmd = app.add_subcommand("sweep", "Parameter sweep of a family as CSV");
    sweep_cmd->add_option("--family", templ, "Family template, e.g. family:rectangle:1:{}")->required();
    sweep_cmd->add_option("--param", params, "Comma-separated parameter values")->required()->delimiter(',');
    sweep_cmd->add_option("--ratio", ratios, "Extra ratio columns, e.g. gap_T/param,gap_H/alpha^2")->delimiter(',');
    fem_flags(sweep_cmd);

    auto* table2 = app.add_subcommand("table2", "Compare the three thinning families with their closed forms");
    fem_flags(table2);

    std::size_t seeds = 200, points = 30;
    auto* suite = app.add_subcommand("suite", "Verify every inequality on random polygons; exit 0 iff all pass");
    suite->add_option("--seeds", seeds, "Number of random polygons (seeds 1..N)")->check(CLI::PositiveNumber);
    suite->add_option("--points", points, "Points per random hull")->check(CLI::Range(4, 100000));
    fem_flags(suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const bool fem_tol_given = app.got_subcommand(compute) ? compute->count("--fem-tol") > 0
                               : app.got_subcommand(verify_cmd) ? verify_cmd->count("--fem-tol") > 0
                                                                : false;
    AnalysisOptions opts;
    opts.fem.tol = fem_tol;
    opts.fem.max_triangles = max_triangles;
    opts.profile_samples = samples;

    try {
        if (app.got_subcommand(compute) || app.got_subcommand(verify_cmd)) {
            const Loaded s = load_shape(shape_arg);
            if (fem_tol_given && std::holds_alternative<ClosedFormValues>(s.shape))
                throw Error("closed_form_only", s.label + " has closed-form values only; no FEM solve");
            const ShapeAnalysis a = analyze(s.shape, opts, s.label);
            if (app.got_subcommand(compute)) {
                emit(io::dump(io::to_json(a)), out);
                return 0;
            }
            const InequalityReport r = verify(a, tol);
            emit(io::dump(io::to_json(r)), out);
            return r.all_pass() ? 0 : 1;
        }
        if (app.got_subcommand(sweep_cmd)) {
            emit(to_csv(sweep(templ, params, ratios, opts)), out);
            return 0;
        }
        if (app.got_subcommand(table2)) {
            const Table2Report t = table2_report({}, opts);
            emit(io::dump(io::to_json(t)), out);
            return t.all_pass() ? 0 : 1;
        }
        const SuiteResult r = run_suite(seeds, opts, points);
        emit(io::dump(io::to_json(r)), out);
        return r.all_pass() ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_input_error(e) ? 2 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
