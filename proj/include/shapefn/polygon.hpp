#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "shapefn/error.hpp"
#include "shapefn/vec2.hpp"

namespace shapefn {

/// Unit vector in the plane.
class Direction {
public:
    Direction(double x, double y) {
        const double n = std::hypot(x, y);
        if (!(n > 0.0) || !std::isfinite(n))
            throw Error("invalid direction");
        x_ = x / n;
        y_ = y / n;
    }

    static Direction from_angle(double angle) { return {std::cos(angle), std::sin(angle)}; }

    double x() const { return x_; }
    double y() const { return y_; }
    Vec2 vec() const { return {x_, y_}; }
    Direction operator-() const { return Direction(-x_, -y_); }

private:
    double x_ = 1.0;
    double y_ = 0.0;
};

/// Closed half-plane {p : normal . p >= offset}, with unit normal.
struct HalfPlane {
    Vec2 normal;
    double offset = 0.0;

    double signed_distance(Vec2 p) const { return dot(normal, p) - offset; }
};

/// A non-degenerate convex polygon with counterclockwise vertices and no
/// collinear vertex triples.
class ConvexPolygon {
public:
    /// Accepts either orientation; merges duplicate and collinear vertices.
    /// Throws Error("degenerate polygon") when fewer than three corners remain
    /// and Error("non-convex polygon") when the input turns the wrong way.
    explicit ConvexPolygon(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) { normalize(); }

    std::span<const Vec2> vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    Vec2 vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
    Vec2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }

    /// Inward half-plane bounded by edge i (from vertex i to vertex i+1).
    HalfPlane half_plane(std::size_t i) const {
        const Vec2 d = edge(i);
        const Vec2 n = perp(d) / norm(d);
        return {n, dot(n, vertex(i))};
    }

    std::vector<HalfPlane> half_planes() const {
        std::vector<HalfPlane> out;
        out.reserve(size());
        for (std::size_t i = 0; i < size(); ++i)
            out.push_back(half_plane(i));
        return out;
    }

    /// Largest bounding-box extent.
    double scale() const {
        auto [xmin, xmax] = std::minmax_element(vertices_.begin(), vertices_.end(),
                                                [](Vec2 a, Vec2 b) { return a.x < b.x; });
        auto [ymin, ymax] = std::minmax_element(vertices_.begin(), vertices_.end(),
                                                [](Vec2 a, Vec2 b) { return a.y < b.y; });
        return std::max(xmax->x - xmin->x, ymax->y - ymin->y);
    }

    ConvexPolygon scaled(double s) const {
        std::vector<Vec2> v(vertices_);
        for (auto& p : v)
            p *= s;
        return ConvexPolygon(std::move(v));
    }

    ConvexPolygon translated(Vec2 offset) const {
        std::vector<Vec2> v(vertices_);
        for (auto& p : v)
            p += offset;
        return ConvexPolygon(std::move(v));
    }

private:
    void normalize();

    std::vector<Vec2> vertices_;
};

inline double signed_area(std::span<const Vec2> v) {
    double s = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i)
        s += cross(v[i], v[(i + 1) % n]);
    return 0.5 * s;
}

inline void ConvexPolygon::normalize() {
    for (const auto& p : vertices_)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error("degenerate polygon", "non-finite coordinate");
    if (vertices_.size() < 3)
        throw Error("degenerate polygon", "fewer than three vertices");

    const double s = scale();
    if (!(s > 0.0))
        throw Error("degenerate polygon", "zero extent");
    const double merge_len = 1e-12 * s;
    const double merge_cross = 1e-12 * s * s;

    if (signed_area(vertices_) < 0.0)
        std::reverse(vertices_.begin(), vertices_.end());

    // drop repeated points, then collinear or slightly reflex corners
    std::vector<Vec2> v;
    v.reserve(vertices_.size());
    for (const auto& p : vertices_)
        if (v.empty() || distance(v.back(), p) > merge_len)
            v.push_back(p);
    while (v.size() > 1 && distance(v.front(), v.back()) <= merge_len)
        v.pop_back();

    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size() && v.size() >= 3; ++i) {
            const std::size_t n = v.size();
            const Vec2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
            const double turn = orient(a, b, c);
            if (turn <= merge_cross) {
                if (turn < -merge_cross)
                    throw Error("non-convex polygon");
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                --i;
            }
        }
    }
    if (v.size() < 3)
        throw Error("degenerate polygon", "collinear vertices");

    // every corner turns left; a simple convex polygon turns exactly once around
    double turning = 0.0;
    for (std::size_t i = 0, n = v.size(); i < n; ++i) {
        const Vec2 e0 = v[(i + 1) % n] - v[i];
        const Vec2 e1 = v[(i + 2) % n] - v[(i + 1) % n];
        turning += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    if (std::abs(turning - 2.0 * std::numbers::pi) > 1e-6)
        throw Error("non-convex polygon", "self-overlapping boundary");
    if (!(signed_area(v) > 1e-14 * s * s))
        throw Error("degenerate polygon", "zero area");
    vertices_ = std::move(v);
}

inline double area(const ConvexPolygon& poly) { return signed_area(poly.vertices()); }

inline double perimeter(const ConvexPolygon& poly) {
    double p = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        p += norm(poly.edge(i));
    return p;
}

/// Support function h(u) = max over the polygon of x . u.
inline double support(const ConvexPolygon& poly, const Direction& dir) {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& p : poly.vertices())
        h = std::max(h, dot(p, dir.vec()));
    return h;
}

inline double width(const ConvexPolygon& poly, const Direction& dir) {
    return support(poly, dir) + support(poly, -dir);
}

struct WidthResult {
    double width;
    Direction direction;
};

/// Minimal width. The minimum over directions is attained at an edge normal,
/// where it equals the largest distance of a vertex from that edge's line.
inline WidthResult min_width_with_direction(const ConvexPolygon& poly) {
    double best = std::numeric_limits<double>::infinity();
    Vec2 best_dir{1.0, 0.0};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const HalfPlane hp = poly.half_plane(i);
        double w = 0.0;
        for (const auto& p : poly.vertices())
            w = std::max(w, hp.signed_distance(p));
        if (w < best) {
            best = w;
            best_dir = hp.normal;
        }
    }
    return {best, Direction(best_dir.x, best_dir.y)};
}

inline double min_width(const ConvexPolygon& poly) { return min_width_with_direction(poly).width; }

inline double diameter(const ConvexPolygon& poly) {
    double d = 0.0;
    const auto v = poly.vertices();
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            d = std::max(d, distance(v[i], v[j]));
    return d;
}

} // namespace shapefn
