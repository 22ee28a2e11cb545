#include "sdlw/projection.hpp"

#include <cmath>

namespace sdlw {

std::array<double, 3> project_ambient(const Vec4& p, const AmbientMetric& m) {
    if (submanifold_residual(p, m) > 1e-6)
        throw ConstraintViolation("point violates its submanifold constraint");
    switch (m.tag) {
        case Submanifold::R3:
        case Submanifold::R21:
        case Submanifold::None:
            return {p[0], p[1], p[2]};
        case Submanifold::H3Plus:
        case Submanifold::H3Minus: {
            const double den = 1.0 + p[3];
            if (std::abs(den) < 1e-12)
                throw ConstraintViolation("stereographic pole of H^3_-");
            const std::array<double, 3> q{p[0] / den, p[1] / den, p[2] / den};
            const double r2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
            if (m.tag == Submanifold::H3Plus ? r2 >= 1.0 : r2 <= 1.0)
                throw ConstraintViolation("H^3 image escaped its sheet region");
            return q;
        }
        case Submanifold::S21: {
            const double f = std::exp(std::atan(p[3])) / std::sqrt(1.0 + p[3] * p[3]);
            const std::array<double, 3> q{p[0] * f, p[1] * f, p[2] * f};
            const double r = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
            const double half_pi = std::acos(-1.0) / 2;
            if (r <= std::exp(-half_pi) || r >= std::exp(half_pi))
                throw ConstraintViolation("hollow-ball image radius out of range");
            return q;
        }
    }
    return {p[0], p[1], p[2]};
}

} // namespace sdlw
