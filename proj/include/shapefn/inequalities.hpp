#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "shapefn/analysis.hpp"
#include "shapefn/error.hpp"

namespace shapefn {

namespace constants {

inline constexpr double pi = std::numbers::pi;

/// Constant of the cubic lower bound for the torsion functional: 1 / (2^3 3^4 n^3).
inline double C1(int n) { return 1.0 / (8.0 * 81.0 * n * n * n); }

/// Constant of the quartic lower bound for the eigenvalue functional: pi^2 / (2^5 3^4) / (n^3 (2n - 1)).
inline double C2(int n) { return pi * pi / (32.0 * 81.0) / (static_cast<double>(n) * n * n * (2.0 * n - 1.0)); }

/// Planar constant of the perimeter decay P(t) <= P - c2 (|Omega| - mu(t)) / P.
inline constexpr double c2 = 2.0 * pi;

inline double q1(int n, double beta) { return beta / (6.0 * n); }
inline double q2(int n, double beta) { return 1.0 / (1.0 + beta / n); }

/// Volume of the unit n-ball.
inline double omega(int n) { return std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0); }

/// Lower bound factor in R >= k(n) w.
inline double inradius_width_factor(int n) {
    return n % 2 == 0 ? std::sqrt(n + 2.0) / (2.0 * n + 2.0) : 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));
}

/// Factor in P <= f(n) diam^{n-1}.
inline double perimeter_diameter_factor(int n) {
    return n * omega(n) * std::pow(n / (2.0 * n + 2.0), 0.5 * (n - 1));
}

/// First positive zero of the Bessel function J_nu.
inline double bessel_zero(double nu) {
    double lo = std::max(nu, 0.0) + 0.5;
    const double step = 0.05;
    double flo = std::cyl_bessel_j(nu, lo);
    double hi = lo + step;
    while (std::cyl_bessel_j(nu, hi) * flo > 0.0)
        hi += step;
    lo = hi - step;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::cyl_bessel_j(nu, mid) * std::cyl_bessel_j(nu, lo) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// First Dirichlet eigenvalue of the unit n-ball, j_{n/2-1,1}^2.
inline double lambda_unit_ball(int n) {
    const double j = bessel_zero(0.5 * n - 1.0);
    return j * j;
}

/// Torsional rigidity of the unit n-ball, omega_n / (n (n + 2)).
inline double torsion_unit_ball(int n) { return omega(n) / (n * (n + 2.0)); }

} // namespace constants

struct ChainConstants {
    double C1;
    double C2;
    double c2;
    double K2D;
    double C3_2D;
    double C4_2D;
};

/// The planar constants obtained by chaining R >= w/3 and P <= 2 pi diam / sqrt 3
/// through the proof estimates in terms of R / P.
inline ChainConstants derive_2d_constants() {
    using namespace constants;
    const int n = 2;
    // R / P >= (1/3) (sqrt 3 / (2 pi)) w / diam
    const double r_over_p = inradius_width_factor(n) / perimeter_diameter_factor(n);
    ChainConstants k;
    k.C1 = C1(n);
    k.C2 = C2(n);
    k.c2 = c2;
    k.K2D = c2 / (2.0 * n) * r_over_p;
    k.C3_2D = 27.0 * c2 / (256.0 * n) * r_over_p;
    k.C4_2D = pi * pi * c2 / (8.0 * n) * ((pi - 2.0) / (2.0 * pi)) * r_over_p;
    return k;
}

struct FunctionalSuite {
    double F1; // T P^2 / |Omega|^3
    double F2; // lambda |Omega|^2 / P^2
    double F3; // T / (R^2 |Omega|)
    double F4; // lambda R^2
    double alpha;
    double beta;
};

inline FunctionalSuite functional_suite(const ShapeMeasurements& m, double torsion, double lambda) {
    const double a = m.area, p = m.perimeter, r = m.inradius;
    return {torsion * p * p / (a * a * a), lambda * a * a / (p * p), torsion / (r * r * a), lambda * r * r,
            m.alpha, m.beta};
}

inline FunctionalSuite functional_suite(const ShapeMeasurements& m, const FunctionalValues& f) {
    return functional_suite(m, f.torsion.value, f.lambda.value);
}

struct InequalityEntry {
    std::string id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0; // lhs - rhs
    bool pass = false;
    double tol = 0.0;
    bool strict = false;
};

struct InequalityReport {
    std::string shape;
    std::vector<InequalityEntry> entries;

    bool all_pass() const {
        return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.pass; });
    }

    const InequalityEntry* find(const std::string& id) const {
        for (const auto& e : entries)
            if (e.id == id)
                return &e;
        return nullptr;
    }
};

namespace detail {

inline void require_consistent(const ShapeAnalysis& s) {
    const auto& m = s.measurements;
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-9 * std::max({1.0, std::abs(x), std::abs(y)}); };
    if (!(m.area > 0.0 && m.perimeter > 0.0 && m.inradius > 0.0 && m.min_width > 0.0 && m.diameter > 0.0))
        throw Error("shape_mismatch", "non-positive measurement");
    if (!(s.functionals.torsion.value > 0.0 && s.functionals.lambda.value > 0.0))
        throw Error("shape_mismatch", "non-positive functional value");
    const auto [alpha, beta] = asymmetries(m);
    if (!close(alpha, m.alpha) || !close(beta, m.beta))
        throw Error("shape_mismatch", "asymmetries disagree with measurements");
    if (s.profile) {
        if (m.dim != 2)
            throw Error("shape_mismatch", "profile attached to a non-planar shape");
        if (!close(s.profile->area(), m.area) || !close(s.profile->perimeter(), m.perimeter) ||
            !close(s.profile->inradius, m.inradius))
            throw Error("shape_mismatch", "profile belongs to a different shape");
    }
}

class ReportBuilder {
public:
    explicit ReportBuilder(std::string label) { report_.shape = std::move(label); }

    void add(std::string id, double lhs, double rhs, double tol, bool strict = false) {
        InequalityEntry e;
        e.id = std::move(id);
        e.lhs = lhs;
        e.rhs = rhs;
        e.margin = lhs - rhs;
        e.tol = tol;
        e.strict = strict;
        e.pass = e.margin >= -tol;
        report_.entries.push_back(std::move(e));
    }

    InequalityReport take() { return std::move(report_); }

private:
    InequalityReport report_;
};

} // namespace detail

/// Checks every inequality in scope; each entry reads lhs >= rhs.
/// FEM-dependent entries use max(tol, 10 x propagated error estimate) with a rounding floor;
/// purely geometric entries use 1e-9 relative to the magnitudes involved.
inline InequalityReport verify(const ShapeAnalysis& s, double tol) {
    using namespace constants;
    if (!(tol >= 0.0))
        throw std::invalid_argument("verify: tolerance must be non-negative");
    detail::require_consistent(s);

    const auto& m = s.measurements;
    const int n = m.dim;
    const auto& fv = s.functionals;
    const FunctionalSuite f = functional_suite(m, fv);
    const double rel_t = fv.torsion.error_estimate / fv.torsion.value;
    const double rel_l = fv.lambda.error_estimate / fv.lambda.value;
    auto fem_tol = [&](double value, double rel) {
        return std::max({tol, 10.0 * std::abs(value) * rel, 1e-12 * std::max(1.0, std::abs(value))});
    };
    auto geo_tol = [](double lhs, double rhs) { return 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}); };
    const double tol_f1 = fem_tol(f.F1, rel_t), tol_f2 = fem_tol(f.F2, rel_l);
    const double tol_f3 = fem_tol(f.F3, rel_t), tol_f4 = fem_tol(f.F4, rel_l);
    const double beta = m.beta, alpha = m.alpha;

    detail::ReportBuilder r(s.label);
    // classical chains
    r.add("CHAIN-T", f.F1, 1.0 / 3.0, tol_f1);
    if (n == 2)
        r.add("CHAIN-T-UP", 2.0 / 3.0, f.F1, tol_f1);
    r.add("CHAIN-L", f.F2, pi * pi / (4.0 * n * n), tol_f2);
    r.add("CHAIN-L-UP", pi * pi / 4.0, f.F2, tol_f2);
    r.add("CHAIN-M", f.F3, 1.0 / (n * (n + 2.0)), tol_f3);
    r.add("CHAIN-M-UP", 1.0 / 3.0, f.F3, tol_f3);
    r.add("CHAIN-H", lambda_unit_ball(n), f.F4, tol_f4);
    r.add("CHAIN-H-LO", f.F4, pi * pi / 4.0, tol_f4);

    // quantitative bounds in beta
    r.add("Q1-LO", f.F1 - 1.0 / 3.0, C1(n) * beta * beta * beta, tol_f1);
    r.add("Q1-HI", (n + 1.0) / 3.0 * beta, f.F1 - 1.0 / 3.0, tol_f1);
    r.add("Q2-LO", pi * pi / 4.0 - f.F2, C2(n) * std::pow(beta, 4), tol_f2);
    r.add("Q2-HI", pi * pi / 2.0 * beta, pi * pi / 4.0 - f.F2, tol_f2);
    if (n == 2)
        r.add("Q3-LO", 1.0 / 3.0 - f.F3, beta / 6.0, tol_f3, true);
    r.add("Q3-HI", 2.0 / 3.0 * beta, 1.0 / 3.0 - f.F3, tol_f3);
    r.add("Q4", pi * pi * (n + 1.0) / 4.0 * beta, f.F4 - pi * pi / 4.0, tol_f4);

    // explicit planar constants in alpha
    if (n == 2) {
        const ChainConstants k = derive_2d_constants();
        r.add("Q5", beta, k.K2D * alpha, geo_tol(beta, k.K2D * alpha));
        r.add("Q6", f.F1 - 1.0 / 3.0, k.C3_2D * alpha, tol_f1);
        r.add("Q7", pi * pi / 4.0 - f.F2, k.C4_2D * alpha, tol_f2);
    }

    // inner parallel set at t = |Omega| / P
    if (s.mu_bar && s.per_bar) {
        r.add("L1", *s.mu_bar, q1(n, beta) * m.area, geo_tol(*s.mu_bar, m.area));
        r.add("L2", q2(n, beta) * m.perimeter, *s.per_bar, geo_tol(*s.per_bar, m.perimeter));
    }

    // geometry
    const double kw = inradius_width_factor(n) * m.min_width;
    r.add("G1", m.inradius, kw, geo_tol(m.inradius, kw));
    r.add("G1-UP", m.min_width / 2.0, m.inradius, geo_tol(m.inradius, m.min_width));
    const double pd = perimeter_diameter_factor(n) * std::pow(m.diameter, n - 1);
    r.add("G2", pd, m.perimeter, geo_tol(pd, m.perimeter));
    const double pra = m.perimeter * m.inradius / m.area;
    r.add("G3", pra, 1.0, geo_tol(pra, 1.0), true);
    r.add("G3-UP", static_cast<double>(n), pra, geo_tol(pra, n));

    // inner parallel profile, worst sample
    if (s.profile) {
        const auto& smp = s.profile->samples;
        const double a = m.area, p = m.perimeter, rad = s.profile->inradius;
        double w1 = std::numeric_limits<double>::infinity(), w2 = w1, w3 = w1, w4 = w1;
        for (std::size_t i = 0; i < smp.size(); ++i) {
            const auto& x = smp[i];
            w1 = std::min(w1, x.mu - (a - p * x.t));
            w2 = std::min(w2, (p - 2.0 * pi * x.t) - x.per);
            w3 = std::min(w3, (p - c2 * (a - x.mu) / p) - x.per);
            const std::size_t j = i + 1 < smp.size() ? i : i - 1;
            const double slope = (smp[j + 1].per - smp[j].per) / (smp[j + 1].t - smp[j].t);
            const double d = rad - x.t;
            w4 = std::min(w4, (p * d + 0.5 * d * d * slope) - x.mu);
        }
        const double ta = geo_tol(a, 0.0), tp = geo_tol(p, 0.0);
        r.add("PROF-1", w1, 0.0, ta);
        r.add("PROF-2", w2, 0.0, tp);
        r.add("PROF-3", w3, 0.0, tp);
        r.add("PROF-4", w4, 0.0, ta);
    }

    // Saint-Venant and Faber-Krahn against the disk
    if (n == 2) {
        const double sv_ball = torsion_unit_ball(2) / (pi * pi);
        const double sv = fv.torsion.value / (m.area * m.area);
        r.add("SV", sv_ball, sv, fem_tol(sv, rel_t));
        const double fk_ball = pi * lambda_unit_ball(2);
        const double fk = m.area * fv.lambda.value;
        r.add("FK", fk, fk_ball, fem_tol(fk, rel_l));
    }
    return r.take();
}

inline InequalityReport verify(const ConvexPolygon& poly, double tol, const AnalysisOptions& opts = {},
                               std::string label = {}) {
    return verify(analyze(poly, opts, std::move(label)), tol);
}

struct SweepPoint {
    double alpha;
    double beta;
    double gap;
};

/// Smallest observed ratio gap / remainder(point): a lower estimate of the best constant.
inline double empirical_constant(std::span<const SweepPoint> points,
                                 const std::function<double(const SweepPoint&)>& remainder) {
    if (points.empty())
        throw Error("empty sweep");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points)
        best = std::min(best, p.gap / remainder(p));
    return best;
}

enum class Asymmetry { Alpha, Beta };

/// empirical_constant with remainder alpha^k or beta^k.
inline double empirical_constant(std::span<const SweepPoint> points, Asymmetry which, double exponent) {
    return empirical_constant(points, [&](const SweepPoint& p) {
        return std::pow(which == Asymmetry::Alpha ? p.alpha : p.beta, exponent);
    });
}

} // namespace shapefn
