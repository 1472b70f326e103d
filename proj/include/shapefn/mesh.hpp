#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "shapefn/inradius.hpp"
#include "shapefn/polygon.hpp"

namespace shapefn {

/// Conforming triangulation with counterclockwise triangles.
struct TriangleMesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<bool> boundary;

    double triangle_area(std::size_t t) const {
        const auto& tr = triangles[t];
        return 0.5 * orient(nodes[tr[0]], nodes[tr[1]], nodes[tr[2]]);
    }

    double max_edge_length() const {
        double h = 0.0;
        for (const auto& tr : triangles)
            for (int i = 0; i < 3; ++i)
                h = std::max(h, distance(nodes[tr[i]], nodes[tr[(i + 1) % 3]]));
        return h;
    }
};

namespace detail {

inline std::uint64_t edge_key(std::uint32_t a, std::uint32_t b) {
    if (a > b)
        std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

/// Nodes on edges used by exactly one triangle.
inline std::vector<bool> boundary_nodes(const TriangleMesh& m) {
    std::unordered_map<std::uint64_t, int> count;
    count.reserve(3 * m.triangles.size());
    for (const auto& tr : m.triangles)
        for (int i = 0; i < 3; ++i)
            ++count[edge_key(tr[i], tr[(i + 1) % 3])];
    std::vector<bool> flags(m.nodes.size(), false);
    for (const auto& [key, c] : count)
        if (c == 1) {
            flags[key >> 32] = true;
            flags[key & 0xffffffffu] = true;
        }
    return flags;
}

/// Incremental Delaunay triangulation inside a convex boundary ring.
class DelaunayBuilder {
public:
    DelaunayBuilder(std::vector<Vec2> ring, Vec2 center) {
        pts_ = std::move(ring);
        const int m = static_cast<int>(pts_.size());
        pts_.push_back(center);
        const int c = m;
        tris_.resize(m);
        for (int i = 0; i < m; ++i) {
            const int j = (i + 1) % m;
            // (c, p_i, p_j): opposite c is the boundary edge
            tris_[i].v = {c, i, j};
            tris_[i].n = {-1, (i + 1) % m, (i + m - 1) % m};
        }
        std::vector<std::pair<int, int>> stack;
        for (int i = 0; i < m; ++i)
            stack.emplace_back(i, 1);
        legalize(stack);
    }

    void insert(Vec2 p, double snap) {
        const int t = locate(p);
        if (t < 0)
            return;
        const Tri old = tris_[t];
        for (int e = 0; e < 3; ++e)
            if (orient(pts_[old.v[(e + 1) % 3]], pts_[old.v[(e + 2) % 3]], p) <= snap)
                return;
        const int ip = static_cast<int>(pts_.size());
        pts_.push_back(p);
        const int a = old.v[0], b = old.v[1], c = old.v[2];
        const int t1 = static_cast<int>(tris_.size()), t2 = t1 + 1;
        tris_[t] = {{ip, b, c}, {old.n[0], t1, t2}};
        tris_.push_back({{ip, c, a}, {old.n[1], t2, t}});
        tris_.push_back({{ip, a, b}, {old.n[2], t, t1}});
        relink(old.n[1], t, t1);
        relink(old.n[2], t, t2);
        last_ = t;
        std::vector<std::pair<int, int>> stack{{t, 0}, {t1, 0}, {t2, 0}};
        legalize(stack);
    }

    TriangleMesh finish() const {
        TriangleMesh m;
        m.nodes = pts_;
        m.triangles.reserve(tris_.size());
        for (const auto& t : tris_)
            m.triangles.push_back({static_cast<std::uint32_t>(t.v[0]), static_cast<std::uint32_t>(t.v[1]),
                                   static_cast<std::uint32_t>(t.v[2])});
        m.boundary = boundary_nodes(m);
        return m;
    }

private:
    struct Tri {
        std::array<int, 3> v; // counterclockwise
        std::array<int, 3> n; // n[i] lies across the edge opposite v[i]
    };

    void relink(int tri, int from, int to) {
        if (tri < 0)
            return;
        for (auto& k : tris_[tri].n)
            if (k == from)
                k = to;
    }

    int locate(Vec2 p) {
        int t = last_;
        const std::size_t limit = 4 * tris_.size() + 16;
        for (std::size_t step = 0; step < limit; ++step) {
            const Tri& tr = tris_[t];
            int next = -2;
            for (int e = 0; e < 3; ++e)
                if (orient(pts_[tr.v[(e + 1) % 3]], pts_[tr.v[(e + 2) % 3]], p) < 0.0) {
                    next = tr.n[e];
                    break;
                }
            if (next == -2)
                return t;
            if (next < 0)
                return -1;
            t = next;
        }
        for (std::size_t k = 0; k < tris_.size(); ++k) {
            const Tri& tr = tris_[k];
            if (orient(pts_[tr.v[0]], pts_[tr.v[1]], p) >= 0.0 && orient(pts_[tr.v[1]], pts_[tr.v[2]], p) >= 0.0 &&
                orient(pts_[tr.v[2]], pts_[tr.v[0]], p) >= 0.0)
                return static_cast<int>(k);
        }
        return -1;
    }

    // true when d lies strictly inside the circumcircle of counterclockwise (a, b, c)
    static bool in_circle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
        const long double adx = a.x - d.x, ady = a.y - d.y;
        const long double bdx = b.x - d.x, bdy = b.y - d.y;
        const long double cdx = c.x - d.x, cdy = c.y - d.y;
        const long double al = adx * adx + ady * ady, bl = bdx * bdx + bdy * bdy, cl = cdx * cdx + cdy * cdy;
        const long double t1 = al * (bdx * cdy - cdx * bdy);
        const long double t2 = bl * (cdx * ady - adx * cdy);
        const long double t3 = cl * (adx * bdy - bdx * ady);
        const long double mag = std::abs(t1) + std::abs(t2) + std::abs(t3);
        return t1 + t2 + t3 > 1e-12L * mag;
    }

    void legalize(std::vector<std::pair<int, int>>& stack) {
        while (!stack.empty()) {
            const auto [t, i] = stack.back();
            stack.pop_back();
            const int u = tris_[t].n[i];
            if (u < 0)
                continue;
            int j = 0;
            while (tris_[u].n[j] != t)
                ++j;
            const int a = tris_[t].v[i], b = tris_[t].v[(i + 1) % 3], c = tris_[t].v[(i + 2) % 3];
            const int d = tris_[u].v[j];
            if (!in_circle(pts_[a], pts_[b], pts_[c], pts_[d]))
                continue;
            if (!(orient(pts_[a], pts_[b], pts_[d]) > 0.0 && orient(pts_[a], pts_[d], pts_[c]) > 0.0))
                continue;
            const int n_ca = tris_[t].n[(i + 1) % 3], n_ab = tris_[t].n[(i + 2) % 3];
            const int n_bd = tris_[u].n[(j + 1) % 3], n_dc = tris_[u].n[(j + 2) % 3];
            tris_[t] = {{a, b, d}, {n_bd, u, n_ab}};
            tris_[u] = {{a, d, c}, {n_dc, n_ca, t}};
            relink(n_bd, u, t);
            relink(n_ca, t, u);
            stack.emplace_back(t, 0);
            stack.emplace_back(t, 2);
            stack.emplace_back(u, 0);
            stack.emplace_back(u, 1);
        }
    }

    std::vector<Vec2> pts_;
    std::vector<Tri> tris_;
    int last_ = 0;
};

} // namespace detail

/// Delaunay mesh with boundary spacing and interior hexagonal-lattice spacing about h.
/// The lattice is aligned with the minimal-width direction.
inline TriangleMesh base_mesh(const ConvexPolygon& poly, double h) {
    if (!(h > 0.0))
        throw std::invalid_argument("base_mesh: h must be positive");
    const Incircle ic = inradius_center(poly);

    std::vector<Vec2> ring;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly.vertex(i), e = poly.edge(i);
        const auto k = static_cast<std::size_t>(std::ceil(norm(e) / h));
        for (std::size_t s = 0; s < std::max<std::size_t>(k, 1); ++s)
            ring.push_back(a + e * (static_cast<double>(s) / static_cast<double>(std::max<std::size_t>(k, 1))));
    }
    detail::DelaunayBuilder builder(std::move(ring), ic.center);

    const Vec2 u = min_width_with_direction(poly).direction.vec();
    const Vec2 v = perp(u);
    double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
    for (const auto& p : poly.vertices()) {
        umin = std::min(umin, dot(p, u));
        umax = std::max(umax, dot(p, u));
        vmin = std::min(vmin, dot(p, v));
        vmax = std::max(vmax, dot(p, v));
    }
    const double dy = h * std::sqrt(3.0) / 2.0;
    const auto rows = static_cast<long>(std::floor((umax - umin) / dy));
    const auto cols = static_cast<long>(std::floor((vmax - vmin) / h)) + 1;
    const double u0 = umin + 0.5 * ((umax - umin) - static_cast<double>(rows) * dy);
    const double v0 = vmin + 0.5 * ((vmax - vmin) - static_cast<double>(cols) * h);
    const auto planes = poly.half_planes();
    const double keep = 0.45 * h;
    const double snap = 1e-10 * h * h;
    for (long r = 0; r <= rows; ++r) {
        const double su = u0 + static_cast<double>(r) * dy;
        const double shift = (r % 2 == 0) ? 0.0 : 0.5 * h;
        for (long c = 0; c <= cols; ++c) {
            const Vec2 p = u * su + v * (v0 + shift + static_cast<double>(c) * h);
            if (distance(p, ic.center) < keep)
                continue;
            bool inside = true;
            for (const auto& hp : planes)
                if (hp.signed_distance(p) < keep) {
                    inside = false;
                    break;
                }
            if (inside)
                builder.insert(p, snap);
        }
    }
    return builder.finish();
}

/// Uniform red refinement: every triangle splits into four through its edge midpoints.
struct Refinement {
    TriangleMesh mesh;
    /// For node k >= coarse node count, the two coarse nodes whose midpoint it is.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> parents;
};

inline Refinement refine(const TriangleMesh& coarse) {
    Refinement out;
    auto& m = out.mesh;
    m.nodes = coarse.nodes;
    std::unordered_map<std::uint64_t, std::uint32_t> mid;
    mid.reserve(3 * coarse.triangles.size());
    auto midpoint = [&](std::uint32_t a, std::uint32_t b) {
        const auto key = detail::edge_key(a, b);
        const auto it = mid.find(key);
        if (it != mid.end())
            return it->second;
        const auto idx = static_cast<std::uint32_t>(m.nodes.size());
        m.nodes.push_back(0.5 * (coarse.nodes[a] + coarse.nodes[b]));
        out.parents.emplace_back(a, b);
        mid.emplace(key, idx);
        return idx;
    };
    m.triangles.reserve(4 * coarse.triangles.size());
    for (const auto& tr : coarse.triangles) {
        const auto ab = midpoint(tr[0], tr[1]);
        const auto bc = midpoint(tr[1], tr[2]);
        const auto ca = midpoint(tr[2], tr[0]);
        m.triangles.push_back({tr[0], ab, ca});
        m.triangles.push_back({ab, tr[1], bc});
        m.triangles.push_back({ca, bc, tr[2]});
        m.triangles.push_back({ab, bc, ca});
    }
    m.boundary = detail::boundary_nodes(m);
    return out;
}

/// Default coarse spacing: a fraction of the inradius and of the diameter.
inline double base_spacing(const ConvexPolygon& poly) {
    return std::min(0.5 * inradius(poly), 0.1 * diameter(poly));
}

/// Mesh with maximum edge length at most target_h.
inline TriangleMesh triangulate(const ConvexPolygon& poly, double target_h) {
    if (!(target_h > 0.0))
        throw std::invalid_argument("triangulate: target_h must be positive");
    TriangleMesh m = base_mesh(poly, std::min(target_h, base_spacing(poly)));
    while (m.max_edge_length() > target_h)
        m = refine(m).mesh;
    return m;
}

} // namespace shapefn
