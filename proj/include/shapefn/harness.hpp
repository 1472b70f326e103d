#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shapefn/analysis.hpp"
#include "shapefn/families.hpp"
#include "shapefn/inequalities.hpp"

namespace shapefn {

/// Shortest decimal text with 12 significant digits; used by every text output.
inline std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// x rounded to 12 significant digits.
inline double round12(double x) { return std::isfinite(x) ? std::stod(format_number(x)) : x; }

struct FamilySpec {
    std::string kind;
    std::vector<double> params;
    std::size_t resolution = default_resolution;
};

namespace detail {

inline bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

inline void check_family(const FamilySpec& s) {
    const auto& p = s.params;
    auto need = [&](std::size_t k) {
        if (p.size() != k)
            throw std::invalid_argument("family " + s.kind + " takes " + std::to_string(k) + " parameters");
    };
    auto positive = [&] {
        for (double v : p)
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("family " + s.kind + ": parameters must be positive");
    };
    if (s.resolution < 8)
        throw std::invalid_argument("boundary resolution must be at least 8");
    if (s.kind == "thinning_box") {
        need(2);
        positive();
        if (!is_integer(p[0]) || p[0] < 2)
            throw std::invalid_argument("thinning_box: n must be an integer >= 2");
    } else if (s.kind == "sector") {
        need(1);
        positive();
        if (!(p[0] < std::numbers::pi))
            throw std::invalid_argument("sector: theta must lie in (0, pi)");
    } else if (s.kind == "ellipse") {
        need(1);
        positive();
        if (!(p[0] <= 1.0))
            throw std::invalid_argument("ellipse: b must lie in (0, 1]");
    } else if (s.kind == "rectangle" || s.kind == "stadium") {
        need(2);
        positive();
    } else if (s.kind == "disk") {
        need(1);
        positive();
    } else if (s.kind == "regular_polygon") {
        need(2);
        positive();
        if (!is_integer(p[0]) || p[0] < 3)
            throw std::invalid_argument("regular_polygon: k must be an integer >= 3");
    } else if (s.kind == "triangle") {
        need(6);
        for (double v : p)
            if (!std::isfinite(v))
                throw std::invalid_argument("triangle: coordinates must be finite");
    } else if (s.kind == "random_polygon") {
        need(2);
        if (!is_integer(p[0]) || p[0] < 0 || !is_integer(p[1]) || p[1] < 4)
            throw std::invalid_argument("random_polygon: seed >= 0 and points >= 4 must be integers");
    } else {
        throw std::invalid_argument("unknown family '" + s.kind + "'");
    }
}

} // namespace detail

/// Parses "family:<kind>:<p1>:<p2>...[@resolution]"; the "family:" prefix is optional.
inline FamilySpec parse_family_spec(std::string text) {
    if (text.rfind("family:", 0) == 0)
        text.erase(0, 7);
    FamilySpec s;
    if (const auto at = text.find('@'); at != std::string::npos) {
        const std::string res = text.substr(at + 1);
        std::size_t used = 0;
        long long r = -1;
        try {
            r = std::stoll(res, &used);
        } catch (const std::exception&) {
        }
        if (used != res.size() || r < 0)
            throw std::invalid_argument("bad boundary resolution '" + res + "'");
        s.resolution = static_cast<std::size_t>(r);
        text.erase(at);
    }
    if (!text.empty() && text.back() == ':')
        throw std::invalid_argument("empty family parameter");
    std::stringstream in(text);
    std::string field;
    std::getline(in, s.kind, ':');
    while (std::getline(in, field, ':')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (field.empty() || used != field.size())
            throw std::invalid_argument("bad family parameter '" + field + "'");
        s.params.push_back(v);
    }
    detail::check_family(s);
    return s;
}

inline std::string to_string(const FamilySpec& s) {
    std::string out = "family:" + s.kind;
    for (double v : s.params)
        out += ":" + format_number(v);
    if (s.resolution != default_resolution)
        out += "@" + std::to_string(s.resolution);
    return out;
}

inline Shape realize(const FamilySpec& s) {
    detail::check_family(s);
    const auto& p = s.params;
    const std::size_t res = s.resolution;
    if (s.kind == "thinning_box")
        return families::thinning_box(static_cast<int>(p[0]), p[1]);
    if (s.kind == "sector")
        return families::sector(p[0], res);
    if (s.kind == "ellipse")
        return families::ellipse(p[0], res);
    if (s.kind == "rectangle")
        return families::rectangle(p[0], p[1]);
    if (s.kind == "disk")
        return families::disk(p[0], res);
    if (s.kind == "regular_polygon")
        return families::regular_polygon(static_cast<std::size_t>(p[0]), p[1]);
    if (s.kind == "triangle")
        return families::triangle({p[0], p[1]}, {p[2], p[3]}, {p[4], p[5]});
    if (s.kind == "stadium")
        return families::stadium(p[0], p[1], res);
    return families::random_polygon(static_cast<std::uint64_t>(p[0]), static_cast<std::size_t>(p[1]));
}

/// The polygon behind a spec; closed-form families have none.
inline ConvexPolygon realize_polygon(const FamilySpec& s) {
    Shape shape = realize(s);
    if (auto* p = std::get_if<ConvexPolygon>(&shape))
        return std::move(*p);
    throw Error("closed_form_only", to_string(s) + " has no polygonal realization");
}

// ---------------------------------------------------------------------------
// sweeps

struct Gaps {
    double torsion;   // F1 - 1/3
    double lambda;    // pi^2/4 - F2
    double makai;     // 1/3 - F3
    double hersch;    // F4 - pi^2/4
};

inline Gaps gaps(const FunctionalSuite& f) {
    const double q = std::numbers::pi * std::numbers::pi / 4.0;
    return {f.F1 - 1.0 / 3.0, q - f.F2, 1.0 / 3.0 - f.F3, f.F4 - q};
}

/// "<numerator>/<denominator>[^k]" with numerator one of gap_T, gap_L, gap_M, gap_H, alpha, beta
/// and denominator one of alpha, beta, param.
struct RatioSpec {
    std::string numerator;
    std::string denominator;
    double exponent = 1.0;
    std::string name;
};

inline RatioSpec parse_ratio(const std::string& text) {
    RatioSpec r;
    r.name = text;
    const auto slash = text.find('/');
    if (slash == std::string::npos)
        throw std::invalid_argument("ratio '" + text + "' has no '/'");
    r.numerator = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (const auto caret = den.find('^'); caret != std::string::npos) {
        std::size_t used = 0;
        const std::string e = den.substr(caret + 1);
        try {
            r.exponent = std::stod(e, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (e.empty() || used != e.size())
            throw std::invalid_argument("bad exponent in ratio '" + text + "'");
        den.erase(caret);
    }
    r.denominator = den;
    static const std::vector<std::string> nums = {"gap_T", "gap_L", "gap_M", "gap_H", "alpha", "beta"};
    static const std::vector<std::string> dens = {"alpha", "beta", "param"};
    if (std::find(nums.begin(), nums.end(), r.numerator) == nums.end() ||
        std::find(dens.begin(), dens.end(), r.denominator) == dens.end())
        throw std::invalid_argument("unknown quantity in ratio '" + text + "'");
    return r;
}

struct SweepRow {
    double param = 0.0;
    FunctionalSuite suite{};
    Gaps gap{};
    double torsion = 0.0;
    double lambda = 0.0;
    std::vector<double> ratios;
};

struct SweepTable {
    std::vector<RatioSpec> ratios;
    std::vector<SweepRow> rows; // ascending in param
};

inline double ratio_value(const RatioSpec& r, const SweepRow& row) {
    const auto& f = row.suite;
    double num = 0.0;
    if (r.numerator == "gap_T")
        num = row.gap.torsion;
    else if (r.numerator == "gap_L")
        num = row.gap.lambda;
    else if (r.numerator == "gap_M")
        num = row.gap.makai;
    else if (r.numerator == "gap_H")
        num = row.gap.hersch;
    else if (r.numerator == "alpha")
        num = f.alpha;
    else
        num = f.beta;
    const double den = r.denominator == "alpha" ? f.alpha : r.denominator == "beta" ? f.beta : row.param;
    return num / std::pow(den, r.exponent);
}

/// Substitutes the parameter into a template holding "{}"; without one, it is appended as the last field.
inline std::string instantiate(const std::string& templ, double param) {
    const std::string v = format_number(param);
    if (const auto pos = templ.find("{}"); pos != std::string::npos)
        return templ.substr(0, pos) + v + templ.substr(pos + 2);
    if (const auto at = templ.find('@'); at != std::string::npos)
        return templ.substr(0, at) + ":" + v + templ.substr(at);
    return templ + ":" + v;
}

inline SweepRow sweep_row(const Shape& shape, double param, const std::vector<RatioSpec>& ratios,
                          const AnalysisOptions& opts) {
    SweepRow row;
    row.param = param;
    ShapeMeasurements m;
    FunctionalValues fv;
    if (const auto* p = std::get_if<ConvexPolygon>(&shape)) {
        m = measure(*p);
        fv = solve_functionals(*p, opts.fem);
    } else {
        const auto s = analyze(std::get<ClosedFormValues>(shape));
        m = s.measurements;
        fv = s.functionals;
    }
    row.suite = functional_suite(m, fv);
    row.gap = gaps(row.suite);
    row.torsion = fv.torsion.value;
    row.lambda = fv.lambda.value;
    for (const auto& r : ratios)
        row.ratios.push_back(ratio_value(r, row));
    return row;
}

inline SweepTable sweep(const std::string& family_template, std::vector<double> params,
                        const std::vector<std::string>& ratios = {}, const AnalysisOptions& opts = {}) {
    if (params.size() < 2)
        throw std::invalid_argument("sweep needs at least two parameter values");
    SweepTable table;
    for (const auto& r : ratios)
        table.ratios.push_back(parse_ratio(r));
    std::sort(params.begin(), params.end());
    for (double v : params) {
        const FamilySpec spec = parse_family_spec(instantiate(family_template, v));
        try {
            table.rows.push_back(sweep_row(realize(spec), v, table.ratios, opts));
        } catch (const Error& e) {
            throw Error(e.code(), "sweep failed at param " + format_number(v) + ": " + e.what());
        }
    }
    return table;
}

inline std::string to_csv(const SweepTable& t) {
    std::string out = "param,alpha,beta,F1,F2,F3,F4,gap_T,gap_L,gap_M,gap_H,torsion,lambda";
    for (const auto& r : t.ratios)
        out += "," + r.name;
    out += "\n";
    for (const auto& row : t.rows) {
        const auto& f = row.suite;
        for (double v : {row.param, f.alpha, f.beta, f.F1, f.F2, f.F3, f.F4, row.gap.torsion, row.gap.lambda,
                         row.gap.makai, row.gap.hersch, row.torsion})
            out += format_number(v) + ",";
        out += format_number(row.lambda);
        for (double v : row.ratios)
            out += "," + format_number(v);
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// closed-form table for the thinning box, the sector and the ellipse

struct Table2Comparison {
    std::string quantity;
    double computed = 0.0;
    double table = 0.0;
    bool asymptotic = false;
    double rel_error = 0.0;
    double tol = 0.0;
    bool pass = false;
};

struct Table2Row {
    std::string family;
    double param = 0.0;
    std::string shape;
    std::vector<Table2Comparison> comparisons;

    const Table2Comparison* find(const std::string& q) const {
        for (const auto& c : comparisons)
            if (c.quantity == q)
                return &c;
        return nullptr;
    }
};

struct Table2Report {
    std::vector<Table2Row> rows;

    bool all_pass() const {
        for (const auto& r : rows)
            for (const auto& c : r.comparisons)
                if (!c.pass)
                    return false;
        return true;
    }

    const Table2Row* find(const std::string& family, double param) const {
        for (const auto& r : rows)
            if (r.family == family && r.param == param)
                return &r;
        return nullptr;
    }
};

struct Table2Params {
    std::vector<double> box = {0.2, 0.1, 0.05};
    std::vector<double> sector = {0.4, 0.2, 0.1};
    std::vector<double> ellipse = {0.2, 0.1, 0.05};
};

namespace detail {

struct Table2Formula {
    const char* quantity;
    double value;
    bool asymptotic;
};

inline Table2Row table2_row(const std::string& family, double param, const std::string& spec,
                            const std::vector<Table2Formula>& formulas, const AnalysisOptions& opts) {
    const ConvexPolygon poly = realize_polygon(parse_family_spec(spec));
    const ShapeMeasurements m = measure(poly);
    const FunctionalValues f = solve_functionals(poly, opts.fem);
    Table2Row row{family, param, spec, {}};
    for (const auto& tf : formulas) {
        const std::string q = tf.quantity;
        double computed = 0.0, fem_rel = 0.0;
        if (q == "area")
            computed = m.area;
        else if (q == "perimeter")
            computed = m.perimeter;
        else if (q == "inradius")
            computed = m.inradius;
        else if (q == "width")
            computed = m.min_width;
        else if (q == "diameter")
            computed = m.diameter;
        else if (q == "torsion")
            computed = f.torsion.value, fem_rel = f.torsion.error_estimate / f.torsion.value;
        else
            computed = f.lambda.value, fem_rel = f.lambda.error_estimate / f.lambda.value;
        Table2Comparison c;
        c.quantity = q;
        c.computed = computed;
        c.table = tf.value;
        c.asymptotic = tf.asymptotic;
        c.rel_error = std::abs(computed - tf.value) / std::abs(tf.value);
        c.tol = tf.asymptotic ? 10.0 * param : std::max(1e-4, 10.0 * fem_rel);
        c.pass = c.rel_error <= c.tol;
        row.comparisons.push_back(c);
    }
    return row;
}

} // namespace detail

inline Table2Report table2_report(const Table2Params& params = {}, const AnalysisOptions& opts = {}) {
    constexpr double pi = std::numbers::pi;
    Table2Report rep;
    for (double a : params.box)
        rep.rows.push_back(detail::table2_row(
            "thinning_box", a, "family:thinning_box:2:" + format_number(a),
            {{"area", a, false},
             {"perimeter", 2.0 + 2.0 * a, false},
             {"inradius", a / 2.0, false},
             {"width", a, false},
             {"diameter", std::sqrt(1.0 + a * a), false},
             {"torsion", a * a * a / 12.0, true},
             {"lambda", pi * pi * (1.0 + 1.0 / (a * a)), false}},
            opts));
    for (double t : params.sector)
        rep.rows.push_back(detail::table2_row("sector", t, "family:sector:" + format_number(t),
                                              {{"area", t / 2.0, false},
                                               {"perimeter", 2.0 + t, false},
                                               {"inradius", t / 2.0, true},
                                               {"width", t / 2.0, true},
                                               {"diameter", 1.0, false},
                                               {"torsion", t * t * t / 48.0, true},
                                               {"lambda", pi * pi / (t * t), true}},
                                              opts));
    for (double b : params.ellipse)
        rep.rows.push_back(detail::table2_row("ellipse", b, "family:ellipse:" + format_number(b),
                                              {{"area", pi * b, false},
                                               {"perimeter", 4.0, true},
                                               {"inradius", b, false},
                                               {"width", 2.0 * b, false},
                                               {"diameter", 2.0, false},
                                               {"torsion", pi * b * b * b / 4.0, true},
                                               {"lambda", pi * pi / (4.0 * b * b), true}},
                                              opts));
    return rep;
}

// ---------------------------------------------------------------------------
// property suite over random polygons

struct SuiteResult {
    std::vector<InequalityReport> reports;

    std::size_t failures() const {
        return static_cast<std::size_t>(
            std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.all_pass(); }));
    }
    bool all_pass() const { return failures() == 0; }
};

/// verify() on random_polygon(seed, 30) for seeds 1..n, with the tolerance set purely by
/// the solver error estimates.
inline SuiteResult run_suite(std::size_t n_seeds, const AnalysisOptions& opts = {}, std::size_t points = 30) {
    SuiteResult out;
    for (std::uint64_t seed = 1; seed <= n_seeds; ++seed) {
        const std::string label = "family:random_polygon:" + std::to_string(seed) + ":" + std::to_string(points);
        out.reports.push_back(verify(families::random_polygon(seed, points), 0.0, opts, label));
    }
    return out;
}

} // namespace shapefn
