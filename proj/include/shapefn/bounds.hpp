#pragma once

#include <cmath>
#include <numbers>

#include "shapefn/erosion.hpp"

namespace shapefn {

struct BoundValues {
    double web_torsion = 0.0;
    double makai_torsion_upper = 0.0;
    double polya_lambda_upper = 0.0;
};

/// Web-function lower bound for the torsion: integral of mu^2 / P over [0, R].
inline double web_torsion_lower(const InnerParallelProfile& prof) {
    return profile_integral(prof, ProfileIntegrand::MuSquaredOverPer);
}

/// Planar upper bound for the torsion: integral of d(x)^2 over the domain, i.e. of t^2 P(t).
inline double makai_torsion_upper(const InnerParallelProfile& prof) {
    return profile_integral(prof, ProfileIntegrand::TSquaredPer);
}

/// Rayleigh quotient of cos(pi mu(d(x)) / (2|Omega|)), written in the t variable.
inline double polya_lambda_upper(const InnerParallelProfile& prof) {
    const double a = prof.area();
    const double pi = std::numbers::pi;
    const double integral = integrate_profile(prof, [&](double, double mu, double per) {
        const double s = std::sin(pi * mu / (2.0 * a));
        return s * s * per * per * per;
    });
    return pi * pi / (4.0 * a * a) * (4.0 / pi) * (pi / (2.0 * a)) * integral;
}

inline BoundValues compute_bounds(const InnerParallelProfile& prof) {
    return {web_torsion_lower(prof), makai_torsion_upper(prof), polya_lambda_upper(prof)};
}

} // namespace shapefn
