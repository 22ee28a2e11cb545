#pragma once

#include "sdlw/curvature.hpp"
#include "sdlw/holonet.hpp"
#include "sdlw/surface.hpp"

namespace sdlw {

/// Weierstrass normal of the flat cases; throws DenominatorBlowup at 1+eps|g|^2 = 0.
Vec4 normal_minmax(cplx g, int eps);

/// Analytic t-derivative of normal_minmax along a strip.
Vec4 dnormal_minmax(cplx g, cplx dg, int eps);

/// Pointwise Weierstrass data of the flat cases.
Vec4 minmax_dx(cplx g, cplx dg, double tau, int eps);
Vec4 minmax_delta_x(cplx g, cplx g1, double sigma, int eps);
Vec4 minmax_ddelta_x(cplx g, cplx g1, cplx dg, cplx dg1, double sigma, int eps);

/// Builds the minimal (eps=+1, R^3) or maximal (eps=-1, R^{2,1}) surface: the
/// base strip is RK4 quadrature of dx and the remaining strips are exact
/// Delta-x additions. For eps=-1, samples at |g| = 1 are flagged invalid and
/// the crossings are bisected to 1e-10 in t; the surface keeps all pieces.
SemiDiscreteSurface build_minmax(const HoloNet& net, int eps, const Vec4& base_point,
                                 const ODESettings& solver);

struct PrincipalField {
    Grid<CurvatureValue> kappa;    // per vertex
    Grid<CurvatureValue> kappa01;  // per k-gap
};

/// Closed-form principal curvatures of the flat cases:
/// kappa = -4|dg|^2 / (tau (1+eps|g|^2)^2),
/// kappa01 = -4|Dg|^2 / (sigma (1+eps|g|^2)(1+eps|g1|^2)).
PrincipalField principal_minmax_closed(const HoloNet& net, int eps);

/// x_theta = x + theta n; n, dn are shared with the base surface.
SemiDiscreteSurface parallel_flat(const SemiDiscreteSurface& S, double theta);

} // namespace sdlw
