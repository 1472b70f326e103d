#pragma once

#include <array>
#include <limits>
#include <vector>

#include "shapefn/polygon.hpp"

namespace shapefn {

struct Incircle {
    double radius;
    Vec2 center;
};

namespace detail {

/// Dense simplex on a dictionary  s = b - A x,  maximize c . x,  x >= 0,
/// starting from the feasible slack basis (b >= 0). Bland's rule.
/// Returns the values of the structural variables.
template <std::size_t N>
std::array<double, N> simplex_max(std::vector<std::array<double, N>> a, std::vector<double> b,
                                  std::array<double, N> c) {
    const std::size_t m = a.size();
    // variable ids: 0..N-1 structural, N..N+m-1 slacks
    std::array<std::size_t, N> nonbasic{};
    for (std::size_t j = 0; j < N; ++j)
        nonbasic[j] = j;
    std::vector<std::size_t> basic(m);
    for (std::size_t i = 0; i < m; ++i)
        basic[i] = N + i;

    constexpr double eps = 1e-13;
    for (int iter = 0; iter < 100000; ++iter) {
        std::size_t enter = N;
        for (std::size_t j = 0; j < N; ++j)
            if (c[j] > eps && (enter == N || nonbasic[j] < nonbasic[enter]))
                enter = j;
        if (enter == N)
            break;

        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (a[i][enter] <= eps)
                continue;
            const double ratio = b[i] / a[i][enter];
            const double tie = 1e-12 * std::max(1.0, std::abs(ratio));
            if (leave == m || ratio < best - tie) {
                best = ratio;
                leave = i;
            } else if (ratio <= best + tie && basic[i] < basic[leave]) {
                leave = i;
            }
        }
        if (leave == m)
            throw Error("degenerate polygon", "unbounded inradius program");

        auto& row = a[leave];
        const double piv = row[enter];
        for (std::size_t k = 0; k < N; ++k)
            row[k] = (k == enter) ? 1.0 / piv : row[k] / piv;
        b[leave] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave)
                continue;
            const double f = a[i][enter];
            if (f == 0.0)
                continue;
            for (std::size_t k = 0; k < N; ++k)
                a[i][k] = (k == enter) ? -f * row[k] : a[i][k] - f * row[k];
            b[i] -= f * b[leave];
        }
        const double ce = c[enter];
        for (std::size_t k = 0; k < N; ++k)
            c[k] = (k == enter) ? -ce * row[k] : c[k] - ce * row[k];
        std::swap(nonbasic[enter], basic[leave]);
    }

    std::array<double, N> x{};
    for (std::size_t i = 0; i < m; ++i)
        if (basic[i] < N)
            x[basic[i]] = b[i];
    return x;
}

} // namespace detail

/// Chebyshev center and inradius: maximize r subject to
/// n_i . (x - v_i) >= r for every inward edge normal n_i.
/// Only the radius is unique; for a non-unique center the simplex vertex is returned.
inline Incircle inradius_center(const ConvexPolygon& poly) {
    const auto planes = poly.half_planes();
    Vec2 g{};
    for (const auto& p : poly.vertices())
        g += p;
    g = g / static_cast<double>(poly.size());

    // shift to the vertex centroid so the slack basis is feasible;
    // free center coordinates are split as x = p - q
    std::vector<std::array<double, 5>> a;
    std::vector<double> b;
    a.reserve(planes.size());
    for (const auto& hp : planes) {
        const double dist = hp.signed_distance(g);
        if (!(dist > 0.0))
            throw Error("degenerate polygon", "centroid not interior");
        a.push_back({-hp.normal.x, hp.normal.x, -hp.normal.y, hp.normal.y, 1.0});
        b.push_back(dist);
    }
    const auto x = detail::simplex_max<5>(std::move(a), std::move(b), {0.0, 0.0, 0.0, 0.0, 1.0});
    const Vec2 center = g + Vec2{x[0] - x[1], x[2] - x[3]};

    double r = std::numeric_limits<double>::infinity();
    for (const auto& hp : planes)
        r = std::min(r, hp.signed_distance(center));
    if (!(r > 1e-14 * poly.scale()))
        throw Error("degenerate polygon", "vanishing inradius");
    return {r, center};
}

inline double inradius(const ConvexPolygon& poly) { return inradius_center(poly).radius; }

} // namespace shapefn
