#pragma once

#include "sdlw/ambient.hpp"

namespace sdlw {

/// Circle or line in the complex plane. Lines stand in for circles forced to
/// infinite radius, so transversality logic near that degeneracy stays exact.
struct PlanarCircle {
    enum class Kind { Circle, Line };

    Kind kind = Kind::Circle;
    cplx center{0};     // circle: center; line: a point on the line
    double radius = 0;  // circle only, > 0
    cplx direction{1};  // line only, unit modulus

    static PlanarCircle circle(cplx center, double radius) {
        PlanarCircle c;
        c.kind = Kind::Circle;
        c.center = center;
        c.radius = radius;
        return c;
    }
    static PlanarCircle line(cplx point, cplx direction) {
        PlanarCircle c;
        c.kind = Kind::Line;
        c.center = point;
        c.direction = direction / std::abs(direction);
        return c;
    }
};

/// Unsigned distance from p to the circle/line.
double distance_to(const PlanarCircle& c, cplx p);

/// The circle through g and g1, tangent to direction dg at g and to dg1 at g1.
/// Exists when the planar tangent cross ratio dg*dg1/(g1-g)^2 is real, checked
/// to `consistency_tol` (relative); throws NoCommonCircle otherwise. Collinear
/// tangents give the line through g and g1.
PlanarCircle tangent_circle(cplx g, cplx dg, cplx g1, cplx dg1, double consistency_tol = 1e-8);

enum class CircleRelation { Disjoint, Tangent, Transversal, Coincident };

/// Position of c relative to the unit circle; Tangent within a 1e-10 band.
CircleRelation circle_vs_unit_circle(const PlanarCircle& c);

} // namespace sdlw
