#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shapefn/inradius.hpp"
#include "shapefn/polygon.hpp"
#include "shapefn/quadrature.hpp"

namespace shapefn {

namespace detail {

/// Sutherland-Hodgman step: keep the part of a convex ring with hp.signed_distance >= shift.
inline std::vector<Vec2> clip(const std::vector<Vec2>& ring, const HalfPlane& hp, double shift) {
    std::vector<Vec2> out;
    out.reserve(ring.size() + 1);
    for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
        const Vec2 a = ring[i], b = ring[(i + 1) % n];
        const double da = hp.signed_distance(a) - shift;
        const double db = hp.signed_distance(b) - shift;
        if (da >= 0.0)
            out.push_back(a);
        if ((da >= 0.0) != (db >= 0.0))
            out.push_back(a + (b - a) * (da / (da - db)));
    }
    return out;
}

/// Intersection of the two lines  n1 . x = o1 + t  and  n2 . x = o2 + t.
inline Vec2 offset_intersection(const HalfPlane& h1, const HalfPlane& h2, double t) {
    const double det = cross(h1.normal, h2.normal);
    const double d1 = h1.offset + t, d2 = h2.offset + t;
    return {(d1 * h2.normal.y - d2 * h1.normal.y) / det, (h1.normal.x * d2 - h2.normal.x * d1) / det};
}

} // namespace detail

/// Inner parallel set {x : dist(x, boundary) > t}. Empty (nullopt) once t >= R.
inline std::optional<ConvexPolygon> erode(const ConvexPolygon& poly, double t) {
    if (!(t >= 0.0))
        throw std::invalid_argument("erode: t must be non-negative");
    if (t == 0.0)
        return poly;
    if (t >= inradius(poly))
        return std::nullopt;
    std::vector<Vec2> ring(poly.vertices().begin(), poly.vertices().end());
    for (const auto& hp : poly.half_planes()) {
        ring = detail::clip(ring, hp, t);
        if (ring.size() < 3)
            return std::nullopt;
    }
    try {
        return ConvexPolygon(std::move(ring));
    } catch (const Error&) {
        return std::nullopt;
    }
}

/// Edge-line description of the eroding polygon. Between consecutive events the set
/// of surviving edge lines is fixed and each edge length shrinks linearly in t.
class Wavefront {
public:
    struct Phase {
        double t_begin;
        double t_end;
        std::vector<std::size_t> edges; // indices into planes(), counterclockwise
    };

    explicit Wavefront(const ConvexPolygon& poly) : planes_(poly.half_planes()) {
        const double tol_t = 1e-11 * poly.scale();
        std::vector<std::size_t> active(planes_.size());
        for (std::size_t i = 0; i < active.size(); ++i)
            active[i] = i;

        double t = 0.0;
        while (active.size() >= 3) {
            const std::size_t k = active.size();
            bool bounded = true;
            for (std::size_t j = 0; j < k; ++j)
                if (!(cross(planes_[active[j]].normal, planes_[active[(j + 1) % k]].normal) > 1e-14)) {
                    bounded = false;
                    break;
                }
            if (!bounded)
                break;

            std::vector<double> vanish(k);
            double dt = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < k; ++j) {
                const double len = edge_length(active, j, t);
                const double rate = shrink_rate(active, j);
                vanish[j] = std::max(0.0, len / rate);
                dt = std::min(dt, vanish[j]);
            }
            phases_.push_back({t, t + dt, active});
            std::vector<std::size_t> next;
            for (std::size_t j = 0; j < k; ++j)
                if (vanish[j] > dt + tol_t)
                    next.push_back(active[j]);
            t += dt;
            active = std::move(next);
        }
        if (phases_.empty())
            throw Error("degenerate polygon", "empty wavefront");
        collapse_ = t;
    }

    const std::vector<HalfPlane>& planes() const { return planes_; }
    const std::vector<Phase>& phases() const { return phases_; }

    /// Time at which the inner parallel set becomes empty; equals the inradius.
    double collapse_time() const { return collapse_; }

    /// Times at which at least one edge vanishes, including the collapse time.
    std::vector<double> breakpoints() const {
        std::vector<double> out;
        for (const auto& ph : phases_)
            out.push_back(ph.t_end);
        return out;
    }

    const Phase& phase_at(double t) const {
        for (const auto& ph : phases_)
            if (t <= ph.t_end)
                return ph;
        return phases_.back();
    }

    std::vector<Vec2> vertices_at(double t) const {
        const auto& e = phase_at(t).edges;
        std::vector<Vec2> v;
        v.reserve(e.size());
        for (std::size_t j = 0; j < e.size(); ++j)
            v.push_back(detail::offset_intersection(planes_[e[(j + e.size() - 1) % e.size()]], planes_[e[j]], t));
        return v;
    }

    double perimeter_at(double t) const {
        const auto& e = phase_at(t).edges;
        double p = 0.0;
        for (std::size_t j = 0; j < e.size(); ++j)
            p += std::max(0.0, edge_length(e, j, t));
        return p;
    }

    double area_at(double t) const {
        if (t >= collapse_)
            return 0.0;
        return std::max(0.0, signed_area(vertices_at(t)));
    }

private:
    // signed length of edge j of the active ring at time t
    double edge_length(const std::vector<std::size_t>& e, std::size_t j, double t) const {
        const std::size_t k = e.size();
        const HalfPlane& prev = planes_[e[(j + k - 1) % k]];
        const HalfPlane& cur = planes_[e[j]];
        const HalfPlane& next = planes_[e[(j + 1) % k]];
        const Vec2 a = detail::offset_intersection(prev, cur, t);
        const Vec2 b = detail::offset_intersection(cur, next, t);
        return dot(b - a, Vec2{cur.normal.y, -cur.normal.x});
    }

    // -dL/dt = tan(e1/2) + tan(e2/2) with e1, e2 the exterior angles at both ends
    double shrink_rate(const std::vector<std::size_t>& e, std::size_t j) const {
        const std::size_t k = e.size();
        auto half_tan = [&](std::size_t a, std::size_t b) {
            const Vec2 n1 = planes_[e[a]].normal, n2 = planes_[e[b]].normal;
            return (1.0 - dot(n1, n2)) / cross(n1, n2);
        };
        return half_tan((j + k - 1) % k, j) + half_tan(j, (j + 1) % k);
    }

    std::vector<HalfPlane> planes_;
    std::vector<Phase> phases_;
    double collapse_ = 0.0;
};

struct ProfileSample {
    double t;
    double mu;
    double per;
    bool breakpoint;
};

/// Sampled area mu(t) and perimeter P(t) of the inner parallel sets on [0, R].
/// Breakpoints are always samples, so P is linear and mu quadratic between samples.
struct InnerParallelProfile {
    std::vector<ProfileSample> samples;
    double inradius = 0.0;

    double area() const { return samples.front().mu; }
    double perimeter() const { return samples.front().per; }
};

inline InnerParallelProfile inner_profile(const ConvexPolygon& poly, std::size_t n_samples = 512) {
    if (n_samples < 16)
        throw std::invalid_argument("inner_profile: n_samples must be at least 16");
    const Wavefront wf(poly);
    const double r = wf.collapse_time();
    const double merge = 1e-12 * r;

    std::vector<std::pair<double, bool>> times;
    for (std::size_t i = 0; i < n_samples; ++i)
        times.emplace_back(r * static_cast<double>(i) / static_cast<double>(n_samples - 1), false);
    for (double b : wf.breakpoints())
        times.emplace_back(b, true);
    std::sort(times.begin(), times.end());

    InnerParallelProfile prof;
    prof.inradius = r;
    for (const auto& [t, bp] : times) {
        if (!prof.samples.empty() && t - prof.samples.back().t <= merge) {
            prof.samples.back().breakpoint = prof.samples.back().breakpoint || bp;
            continue;
        }
        prof.samples.push_back({t, 0.0, 0.0, bp});
    }
    prof.samples.back().t = r;
    for (auto& s : prof.samples) {
        s.mu = wf.area_at(s.t);
        s.per = wf.perimeter_at(s.t);
    }
    prof.samples.front().mu = area(poly);
    prof.samples.front().per = perimeter(poly);
    prof.samples.back().mu = 0.0;
    return prof;
}

enum class ProfileIntegrand { MuSquaredOverPer, TSquaredPer, TPer, Mu };

namespace detail {

// mu^2/P on one segment, graded toward the zero of P when it is close
template <class F>
double graded(const F& f, double a, double b, double pole, int depth) {
    const auto& gl = GaussLegendre16::instance();
    if (depth >= 48 || pole - b >= b - a)
        return gl.integrate(f, a, b);
    const double m = 0.5 * (a + b);
    return graded(f, a, m, pole, depth + 1) + graded(f, m, b, pole, depth + 1);
}

} // namespace detail

/// Integral over [0, R] of f(t, mu(t), P(t)) using the exact piecewise interpolant.
template <class F>
double integrate_profile(const InnerParallelProfile& prof, F&& f) {
    const auto& gl = GaussLegendre16::instance();
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < prof.samples.size(); ++i) {
        const auto& a = prof.samples[i];
        const auto& b = prof.samples[i + 1];
        const double h = b.t - a.t;
        const double slope = (b.per - a.per) / h;
        total += gl.integrate(
            [&](double t) {
                const double s = t - a.t;
                return f(t, a.mu - a.per * s - 0.5 * slope * s * s, a.per + slope * s);
            },
            a.t, b.t);
    }
    return total;
}

inline double profile_integral(const InnerParallelProfile& prof, ProfileIntegrand integrand) {
    switch (integrand) {
    case ProfileIntegrand::TSquaredPer:
        return integrate_profile(prof, [](double t, double, double p) { return t * t * p; });
    case ProfileIntegrand::TPer:
        return integrate_profile(prof, [](double t, double, double p) { return t * p; });
    case ProfileIntegrand::Mu:
        return integrate_profile(prof, [](double, double mu, double) { return mu; });
    case ProfileIntegrand::MuSquaredOverPer:
        break;
    }
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < prof.samples.size(); ++i) {
        const auto& a = prof.samples[i];
        const auto& b = prof.samples[i + 1];
        const double h = b.t - a.t;
        const double slope = (b.per - a.per) / h;
        auto f = [&](double t) {
            const double s = t - a.t;
            const double mu = a.mu - a.per * s - 0.5 * slope * s * s;
            const double p = a.per + slope * s;
            return p > 0.0 ? mu * mu / p : 0.0;
        };
        const double pole = slope < 0.0 ? a.t - a.per / slope : std::numeric_limits<double>::infinity();
        total += detail::graded(f, a.t, b.t, pole, 0);
    }
    return total;
}

} // namespace shapefn
