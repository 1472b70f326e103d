#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "shapefn/polygon.hpp"

namespace shapefn {

inline constexpr std::size_t default_resolution = 512;

/// Scalar functionals of a shape known in closed form (used for n >= 3 boxes).
struct ClosedFormValues {
    int dim = 2;
    double area = 0.0;
    double perimeter = 0.0;
    double inradius = 0.0;
    double width = 0.0;
    double diameter = 0.0;
    double torsion = 0.0;
    double lambda = 0.0;
    bool torsion_asymptotic = true;
};

using Shape = std::variant<ConvexPolygon, ClosedFormValues>;

namespace families {

namespace detail {
inline void require(bool ok, const char* what) {
    if (!ok)
        throw std::invalid_argument(what);
}
} // namespace detail

inline ConvexPolygon rectangle(double a, double b) {
    detail::require(a > 0.0 && b > 0.0, "rectangle: sides must be positive");
    return ConvexPolygon({{0.0, 0.0}, {a, 0.0}, {a, b}, {0.0, b}});
}

inline ConvexPolygon regular_polygon(std::size_t k, double r) {
    detail::require(k >= 3 && r > 0.0, "regular_polygon: need k >= 3 and r > 0");
    std::vector<Vec2> v;
    v.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
        v.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return ConvexPolygon(std::move(v));
}

/// Inscribed regular polygon approximating the disk of radius r.
inline ConvexPolygon disk(double r, std::size_t resolution = default_resolution) {
    return regular_polygon(resolution, r);
}

inline ConvexPolygon triangle(Vec2 a, Vec2 b, Vec2 c) { return ConvexPolygon({a, b, c}); }

/// Circular sector {(r cos p, r sin p) : 0 <= r <= 1, 0 <= p <= theta}; the arc carries
/// `resolution` vertices including both ends.
inline ConvexPolygon sector(double theta, std::size_t resolution = default_resolution) {
    detail::require(theta > 0.0 && theta < std::numbers::pi, "sector: theta must lie in (0, pi)");
    detail::require(resolution >= 2, "sector: resolution must be at least 2");
    std::vector<Vec2> v{{0.0, 0.0}};
    for (std::size_t i = 0; i < resolution; ++i) {
        const double phi = theta * static_cast<double>(i) / static_cast<double>(resolution - 1);
        v.push_back({std::cos(phi), std::sin(phi)});
    }
    return ConvexPolygon(std::move(v));
}

/// Ellipse x^2 + y^2/b^2 < 1; the resolution is rounded up to a multiple of 4 so the
/// axis endpoints are vertices.
inline ConvexPolygon ellipse(double b, std::size_t resolution = default_resolution) {
    detail::require(b > 0.0 && b <= 1.0, "ellipse: b must lie in (0, 1]");
    const std::size_t k = std::max<std::size_t>(4, (resolution + 3) / 4 * 4);
    std::vector<Vec2> v;
    v.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
        v.push_back({std::cos(phi), b * std::sin(phi)});
    }
    return ConvexPolygon(std::move(v));
}

/// Convex hull of two disks of radius r centred at (0,0) and (l,0). Each cap carries
/// resolution/2 vertices at half-step angles, so the straight sides and the cap edges
/// touch one common inner circle.
inline ConvexPolygon stadium(double l, double r, std::size_t resolution = default_resolution) {
    detail::require(l > 0.0 && r > 0.0, "stadium: l and r must be positive");
    const std::size_t half = std::max<std::size_t>(2, resolution / 2);
    const double step = std::numbers::pi / static_cast<double>(half);
    std::vector<Vec2> v;
    v.reserve(2 * half);
    for (std::size_t i = 0; i < half; ++i) {
        const double phi = -0.5 * std::numbers::pi + step * (static_cast<double>(i) + 0.5);
        v.push_back({l + r * std::cos(phi), r * std::sin(phi)});
    }
    for (std::size_t i = 0; i < half; ++i) {
        const double phi = 0.5 * std::numbers::pi + step * (static_cast<double>(i) + 0.5);
        v.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return ConvexPolygon(std::move(v));
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3)
        return pts;
    std::vector<Vec2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0.0)
            --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient(h[k - 2], h[k - 1], pts[i]) <= 0.0)
            --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

/// Convex hull of n_points uniform points in the unit square; deterministic per seed.
inline ConvexPolygon random_polygon(std::uint64_t seed, std::size_t n_points) {
    detail::require(n_points >= 4, "random_polygon: need at least 4 points");
    for (std::uint64_t attempt = 0; attempt < 10; ++attempt) {
        std::mt19937_64 rng(seed + attempt * 0x9E3779B97F4A7C15ULL);
        auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
        std::vector<Vec2> pts(n_points);
        for (auto& p : pts) {
            p.x = uniform();
            p.y = uniform();
        }
        auto hull = convex_hull(std::move(pts));
        if (hull.size() < 3)
            continue;
        try {
            return ConvexPolygon(std::move(hull));
        } catch (const Error&) {
        }
    }
    throw Error("degenerate polygon", "random hull degenerate for seed " + std::to_string(seed));
}

/// The box [0,1]^{n-1} x [0,a] in closed form; T is the slab asymptotic a^3/12.
inline ClosedFormValues thinning_box_values(int n, double a) {
    detail::require(n >= 2 && a > 0.0, "thinning_box: need n >= 2 and a > 0");
    const double d = n - 1.0;
    ClosedFormValues v;
    v.dim = n;
    v.area = a;
    // surface: two unit (n-1)-cubes plus a times the boundary measure of [0,1]^{n-1}
    v.perimeter = 2.0 + 2.0 * d * a;
    v.inradius = std::min(a, 1.0) / 2.0;
    v.width = std::min(a, 1.0);
    v.diameter = std::sqrt(d + a * a);
    v.torsion = a * a * a / 12.0;
    v.lambda = std::numbers::pi * std::numbers::pi * (d + 1.0 / (a * a));
    return v;
}

/// Thinning box: the rectangle [0,1] x [0,a] for n = 2, closed-form values otherwise.
inline Shape thinning_box(int n, double a) {
    if (n == 2)
        return rectangle(1.0, a);
    return thinning_box_values(n, a);
}

} // namespace families

} // namespace shapefn
