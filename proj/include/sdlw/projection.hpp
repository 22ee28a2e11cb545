#pragma once

#include <array>

#include "sdlw/ambient.hpp"

namespace sdlw {

/// 3D visualization coordinates:
///  - R3 / R21: drop the unused fourth component;
///  - H3 (both sheets): stereographic (z1,z2,z3)/(1+z0); H3+ lands strictly
///    inside the unit ball and H3- strictly outside, so the sheets never overlap;
///  - S21: hollow-ball map (z1,z2,z3) e^{arctan z0} / sqrt(1+z0^2), radii in
///    (e^{-pi/2}, e^{pi/2}).
/// Throws ConstraintViolation when p is off its submanifold by more than 1e-6.
std::array<double, 3> project_ambient(const Vec4& p, const AmbientMetric& m);

} // namespace sdlw
