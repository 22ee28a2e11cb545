#include "sdlw/circle.hpp"

#include <cmath>

namespace sdlw {

double distance_to(const PlanarCircle& c, cplx p) {
    if (c.kind == PlanarCircle::Kind::Line)
        return std::abs((std::conj(c.direction) * (p - c.center)).imag());
    return std::abs(std::abs(p - c.center) - c.radius);
}

PlanarCircle tangent_circle(cplx g, cplx dg, cplx g1, cplx dg1, double consistency_tol) {
    const cplx u = g1 - g;
    if (std::abs(u) == 0.0 || std::abs(dg) == 0.0 || std::abs(dg1) == 0.0)
        throw NoCommonCircle("degenerate tangency data (g=g1 or vanishing direction)");

    const cplx q = dg * dg1 / (u * u);
    if (std::abs(q.imag()) > consistency_tol * std::abs(q))
        throw NoCommonCircle("tangent directions admit no common circle (cross ratio not real)");

    const cplx dh = dg / std::abs(dg);
    const double side = (dh * std::conj(u)).imag();
    if (std::abs(side) <= 1e-10 * std::abs(u))
        return PlanarCircle::line(g, u);

    // center on the normal line of dg at g, equidistant from g and g1
    const double t = -std::norm(u) / (2.0 * side);
    const cplx center = g + cplx(0, 1) * t * dh;
    return PlanarCircle::circle(center, std::abs(t));
}

CircleRelation circle_vs_unit_circle(const PlanarCircle& c) {
    constexpr double band = 1e-10;
    if (c.kind == PlanarCircle::Kind::Line) {
        const double dist = std::abs((std::conj(c.direction) * c.center).imag());
        if (std::abs(dist - 1.0) <= band) return CircleRelation::Tangent;
        return dist < 1.0 ? CircleRelation::Transversal : CircleRelation::Disjoint;
    }
    const double d = std::abs(c.center);
    const double inner_gap = std::abs(c.radius - 1.0);
    const double outer_gap = c.radius + 1.0;
    if (d <= band && inner_gap <= band) return CircleRelation::Coincident;
    if (std::abs(d - inner_gap) <= band || std::abs(d - outer_gap) <= band)
        return CircleRelation::Tangent;
    return (inner_gap < d && d < outer_gap) ? CircleRelation::Transversal : CircleRelation::Disjoint;
}

} // namespace sdlw
