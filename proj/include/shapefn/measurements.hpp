#pragma once

#include "shapefn/families.hpp"
#include "shapefn/inradius.hpp"
#include "shapefn/polygon.hpp"

namespace shapefn {

struct ShapeMeasurements {
    int dim = 2;
    double area = 0.0;
    double perimeter = 0.0;
    double inradius = 0.0;
    Vec2 incenter{};
    double min_width = 0.0;
    double diameter = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

struct Asymmetries {
    double alpha;
    double beta;
};

/// alpha = w / diam, beta = P R / |Omega| - 1.
inline Asymmetries asymmetries(double area, double perimeter, double inradius, double width, double diam) {
    return {width / diam, perimeter * inradius / area - 1.0};
}

inline Asymmetries asymmetries(const ShapeMeasurements& m) {
    return asymmetries(m.area, m.perimeter, m.inradius, m.min_width, m.diameter);
}

inline ShapeMeasurements measure(const ConvexPolygon& poly) {
    ShapeMeasurements m;
    m.area = area(poly);
    m.perimeter = perimeter(poly);
    const Incircle ic = inradius_center(poly);
    m.inradius = ic.radius;
    m.incenter = ic.center;
    m.min_width = min_width(poly);
    m.diameter = diameter(poly);
    const auto [a, b] = asymmetries(m);
    m.alpha = a;
    m.beta = b;
    return m;
}

inline ShapeMeasurements measure(const ClosedFormValues& v) {
    ShapeMeasurements m;
    m.dim = v.dim;
    m.area = v.area;
    m.perimeter = v.perimeter;
    m.inradius = v.inradius;
    m.min_width = v.width;
    m.diameter = v.diameter;
    const auto [a, b] = asymmetries(m);
    m.alpha = a;
    m.beta = b;
    return m;
}

} // namespace shapefn
