#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "shapefn/erosion.hpp"
#include "shapefn/families.hpp"
#include "shapefn/fem.hpp"

using namespace shapefn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

double bessel_j0_first_zero() {
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::cyl_bessel_j(0.0, mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

FemOptions light() {
    FemOptions o;
    o.max_triangles = 20000;
    return o;
}

} // namespace

TEST_CASE("rectangle torsion series") {
    CHECK_THAT(closed_form_rectangle_torsion(1.0, 1.0), WithinAbs(0.03514425, 1e-7));
    CHECK(closed_form_rectangle_torsion(2.0, 0.5) == closed_form_rectangle_torsion(0.5, 2.0));
    // slab limit: T / (a^3 b) -> 1/12
    CHECK_THAT(closed_form_rectangle_torsion(1.0, 1e4) / 1e4, WithinRel(1.0 / 12.0, 1e-4));
    // scaling T(s a, s b) = s^4 T(a, b)
    CHECK_THAT(closed_form_rectangle_torsion(3.0, 3.0), WithinRel(81.0 * closed_form_rectangle_torsion(1.0, 1.0), 1e-13));
}

TEST_CASE("unit square calibration") {
    const auto sq = families::rectangle(1.0, 1.0);
    const auto f = solve_functionals(sq);
    CHECK_THAT(f.torsion.value, WithinRel(closed_form_rectangle_torsion(1.0, 1.0), 1e-3));
    CHECK_THAT(f.lambda.value, WithinRel(2.0 * pi * pi, 1e-3));
    // one-sided: torsion from below, eigenvalue from above before extrapolation
    CHECK(f.torsion.coarse < f.torsion.fine);
    CHECK(f.torsion.fine < f.torsion.value);
    CHECK(f.lambda.coarse > f.lambda.fine);
    CHECK(f.lambda.fine > 2.0 * pi * pi);
    CHECK(std::abs(f.torsion.value - closed_form_rectangle_torsion(1.0, 1.0)) <= 3.0 * f.torsion.error_estimate);
    CHECK(std::abs(f.lambda.value - 2.0 * pi * pi) <= 3.0 * f.lambda.error_estimate);
}

TEST_CASE("disk calibration") {
    const auto disk = families::disk(1.0, 256);
    const auto f = solve_functionals(disk);
    const double j0 = bessel_j0_first_zero();
    CHECK_THAT(j0, WithinAbs(2.404825557695773, 1e-12));
    CHECK_THAT(f.torsion.value, WithinRel(pi / 8.0, 5e-3));
    CHECK_THAT(f.lambda.value, WithinRel(j0 * j0, 5e-3));
}

TEST_CASE("thin rectangles") {
    const auto r05 = solve_torsion(families::rectangle(1.0, 0.05), 1e-6);
    CHECK_THAT(r05.value, WithinRel(0.05 * 0.05 * 0.05 / 12.0, 0.05));
    CHECK_THAT(r05.value, WithinRel(closed_form_rectangle_torsion(1.0, 0.05), 2e-3));
    const auto l1 = solve_lambda1(families::rectangle(1.0, 0.1), 1e-6);
    CHECK_THAT(l1.value, WithinRel(pi * pi * 101.0, 2e-3));
}

TEST_CASE("torsion agrees with the series on random rectangles") {
    for (double b : {0.13, 0.37, 0.61, 0.88, 1.7}) {
        const auto t = solve_torsion(families::rectangle(1.0, b), 1e-6, light());
        CHECK_THAT(t.value, WithinRel(closed_form_rectangle_torsion(1.0, b), 2e-3));
    }
}

TEST_CASE("scaling laws") {
    const auto p = families::random_polygon(3, 30);
    const auto f = solve_functionals(p, light());
    const auto g = solve_functionals(p.scaled(2.5), light());
    const double s4 = std::pow(2.5, 4);
    CHECK(std::abs(g.torsion.value - s4 * f.torsion.value) <= 3.0 * s4 * f.torsion.error_estimate + 1e-12);
    CHECK(std::abs(g.lambda.value - f.lambda.value / 6.25) <= 3.0 * f.lambda.error_estimate / 6.25 + 1e-9);
}

TEST_CASE("domain monotonicity under inclusion") {
    const auto outer = families::random_polygon(5, 30);
    const auto inner = *erode(outer, 0.2 * inradius(outer));
    const auto fo = solve_functionals(outer, light());
    const auto fi = solve_functionals(inner, light());
    CHECK(fi.torsion.value <= fo.torsion.value + fi.torsion.error_estimate + fo.torsion.error_estimate);
    CHECK(fi.lambda.value >= fo.lambda.value - fi.lambda.error_estimate - fo.lambda.error_estimate);
}

TEST_CASE("Saint-Venant and Faber-Krahn against the disk") {
    const auto disk = solve_functionals(families::disk(1.0, 256), light());
    const double ad = area(families::disk(1.0, 256));
    for (std::uint64_t seed = 11; seed <= 15; ++seed) {
        const auto p = families::random_polygon(seed, 30);
        const auto f = solve_functionals(p, light());
        const double a = area(p);
        CHECK(f.torsion.value / (a * a) <= disk.torsion.value / (ad * ad));
        CHECK(a * f.lambda.value >= ad * disk.lambda.value);
    }
}

TEST_CASE("errors shrink by at least three per refinement on the square") {
    const auto sq = families::rectangle(1.0, 1.0);
    auto m = base_mesh(sq, base_spacing(sq));
    const double t_exact = closed_form_rectangle_torsion(1.0, 1.0), l_exact = 2.0 * pi * pi;
    double prev_t = 0.0, prev_l = 0.0;
    for (int level = 0; level < 4; ++level) {
        const P1System sys(m);
        const auto t = detail::torsion_on(sys, 1e-10);
        const double sigma = 0.999 * pi * pi;
        const auto l = detail::lambda_on(sys, sigma, 1e-10, t.u);
        const double et = t_exact - t.torsion, el = l.lambda - l_exact;
        CHECK(et > 0.0);
        CHECK(el > 0.0);
        if (level > 0) {
            CHECK(prev_t / et >= 3.0);
            CHECK(prev_l / el >= 3.0);
        }
        prev_t = et;
        prev_l = el;
        m = refine(m).mesh;
    }
}

TEST_CASE("solver tolerance is validated") {
    const auto sq = families::rectangle(1.0, 1.0);
    CHECK_THROWS_AS(solve_torsion(sq, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(solve_lambda1(sq, 0.1), std::invalid_argument);
}
