#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <numbers>

#include "shapefn/families.hpp"
#include "shapefn/mesh.hpp"

using namespace shapefn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// every interior edge is shared by two opposite-facing triangles, every boundary
// edge lies on the polygon boundary, and the triangle areas sum to the polygon area
void check_mesh(const TriangleMesh& m, const ConvexPolygon& poly) {
    const double a = area(poly);
    double total = 0.0;
    for (std::size_t t = 0; t < m.triangles.size(); ++t) {
        const double at = m.triangle_area(t);
        REQUIRE(at > 1e-14 * a);
        total += at;
    }
    CHECK_THAT(total, WithinRel(a, 1e-10));

    std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
    for (const auto& tr : m.triangles)
        for (int i = 0; i < 3; ++i)
            ++directed[{tr[i], tr[(i + 1) % 3]}];
    const auto planes = poly.half_planes();
    auto on_boundary = [&](Vec2 p) {
        for (const auto& hp : planes)
            if (std::abs(hp.signed_distance(p)) < 1e-12 * poly.scale())
                return true;
        return false;
    };
    for (const auto& [e, count] : directed) {
        REQUIRE(count == 1);
        if (!directed.contains({e.second, e.first})) {
            CHECK(m.boundary[e.first]);
            CHECK(m.boundary[e.second]);
            CHECK(on_boundary(0.5 * (m.nodes[e.first] + m.nodes[e.second])));
        }
    }
    for (std::size_t k = 0; k < m.nodes.size(); ++k)
        if (m.boundary[k])
            CHECK(on_boundary(m.nodes[k]));
}

double max_angle(const TriangleMesh& m) {
    double worst = 0.0;
    for (const auto& tr : m.triangles)
        for (int i = 0; i < 3; ++i) {
            const Vec2 p = m.nodes[tr[i]], a = m.nodes[tr[(i + 1) % 3]], b = m.nodes[tr[(i + 2) % 3]];
            worst = std::max(worst, std::acos(std::clamp(dot(a - p, b - p) / (norm(a - p) * norm(b - p)), -1.0, 1.0)));
        }
    return worst;
}

} // namespace

TEST_CASE("unit square mesh") {
    const auto sq = families::rectangle(1.0, 1.0);
    const auto m = triangulate(sq, 0.5);
    CHECK(m.triangles.size() >= 8);
    CHECK(m.max_edge_length() <= 0.5);
    check_mesh(m, sq);
}

TEST_CASE("meshes of assorted shapes are conforming and cover the polygon") {
    std::vector<ConvexPolygon> shapes{families::rectangle(1.0, 0.05), families::disk(1.0, 256),
                                      families::sector(0.1), families::ellipse(0.05),
                                      families::triangle({0, 0}, {1, 0}, {0.5, 0.8}), families::stadium(1.0, 0.3)};
    for (std::uint64_t seed = 1; seed <= 40; ++seed)
        shapes.push_back(families::random_polygon(seed, 30));
    for (const auto& p : shapes) {
        const auto m = base_mesh(p, base_spacing(p));
        check_mesh(m, p);
        CHECK(max_angle(m) < 0.97 * std::numbers::pi);
        const auto fine = refine(m).mesh;
        check_mesh(fine, p);
    }
}

TEST_CASE("refinement quadruples triangles and records midpoint parents") {
    const auto p = families::random_polygon(7, 20);
    const auto coarse = base_mesh(p, base_spacing(p));
    const auto r = refine(coarse);
    CHECK(r.mesh.triangles.size() == 4 * coarse.triangles.size());
    REQUIRE(r.parents.size() == r.mesh.nodes.size() - coarse.nodes.size());
    for (std::size_t k = 0; k < r.parents.size(); ++k) {
        const auto [a, b] = r.parents[k];
        const Vec2 mid = 0.5 * (coarse.nodes[a] + coarse.nodes[b]);
        CHECK(r.mesh.nodes[coarse.nodes.size() + k] == mid);
    }
    CHECK_THAT(r.mesh.max_edge_length(), WithinRel(0.5 * coarse.max_edge_length(), 1e-12));
}

TEST_CASE("triangulate honours the target spacing") {
    const auto p = families::ellipse(0.3, 64);
    for (double h : {0.2, 0.05, 0.02}) {
        const auto m = triangulate(p, h);
        CHECK(m.max_edge_length() <= h);
        check_mesh(m, p);
    }
    CHECK_THROWS_AS(triangulate(p, 0.0), std::invalid_argument);
}
