#pragma once

#include <optional>
#include <string>

#include "shapefn/bounds.hpp"
#include "shapefn/erosion.hpp"
#include "shapefn/families.hpp"
#include "shapefn/fem.hpp"
#include "shapefn/measurements.hpp"

namespace shapefn {

/// Everything the inequality checks consume, computed once per shape.
struct ShapeAnalysis {
    std::string label;
    ShapeMeasurements measurements;
    FunctionalValues functionals;
    /// Present for polygons only.
    std::optional<InnerParallelProfile> profile;
    std::optional<BoundValues> bounds;
    /// Area and perimeter of the inner parallel set at t = |Omega| / P, by direct erosion.
    std::optional<double> mu_bar;
    std::optional<double> per_bar;
};

struct AnalysisOptions {
    FemOptions fem;
    std::size_t profile_samples = 512;
};

inline ShapeAnalysis analyze(const ConvexPolygon& poly, const AnalysisOptions& opts = {}, std::string label = {}) {
    ShapeAnalysis s;
    s.label = std::move(label);
    s.measurements = measure(poly);
    s.functionals = solve_functionals(poly, opts.fem);
    s.profile = inner_profile(poly, opts.profile_samples);
    s.bounds = compute_bounds(*s.profile);
    const double t_bar = s.measurements.area / s.measurements.perimeter;
    if (const auto e = erode(poly, t_bar)) {
        s.mu_bar = area(*e);
        s.per_bar = perimeter(*e);
    } else {
        s.mu_bar = 0.0;
        s.per_bar = 0.0;
    }
    return s;
}

/// Closed-form shapes carry exact values with zero error estimates.
inline ShapeAnalysis analyze(const ClosedFormValues& v, std::string label = {}) {
    ShapeAnalysis s;
    s.label = std::move(label);
    s.measurements = measure(v);
    s.functionals.torsion.value = s.functionals.torsion.fine = s.functionals.torsion.coarse = v.torsion;
    s.functionals.lambda.value = s.functionals.lambda.fine = s.functionals.lambda.coarse = v.lambda;
    return s;
}

inline ShapeAnalysis analyze(const Shape& shape, const AnalysisOptions& opts = {}, std::string label = {}) {
    if (const auto* p = std::get_if<ConvexPolygon>(&shape))
        return analyze(*p, opts, std::move(label));
    return analyze(std::get<ClosedFormValues>(shape), std::move(label));
}

} // namespace shapefn
