#pragma once

#include "sdlw/frame.hpp"
#include "sdlw/minmax.hpp"
#include "sdlw/surface.hpp"

namespace sdlw {

enum class LWType { Hyperbolic, DeSitter, Flat };

/// Genericity constant for the curved Weierstrass families: 1 + s|g|^2 != 0
/// on every used grid point.
struct LWParams {
    double s = 0;

    LWType type() const {
        if (s > 0) return LWType::Hyperbolic;
        if (s < 0) return LWType::DeSitter;
        return LWType::Flat;
    }
    bool cmc1() const { return s == -1.0; }
};

struct LiftedPair {
    SemiDiscreteSurface x;  // BrLW surface in H^3
    SemiDiscreteSurface n;  // BiLW surface in S^{2,1} (its normal is x)
};

/// The lift x = E P E^dagger / det E, n = E Q E^dagger / det E with
///   P = [[T, -s g], [-s conj(g), (1+s^2|g|^2)/T]],
///   Q = [[-T, s g], [s conj(g), (1-s^2|g|^2)/T]],  T = 1 + s|g|^2,
/// which is sgn(T) E L (EL)^dagger / det E for both signs of T with the branch
/// sqrt(T) = i sqrt(|T|) when T < 0. Throws GenericityViolation when |T| < 1e-10.
LiftedPair lift_surface(const FrameField& frame, const LWParams& params);

/// Eq.-(6) closed-form principal curvatures of the lifted pair's x (the n
/// surface has the same sign pattern through kappa^n = 1/kappa^x per edge).
PrincipalField principal_curved_closed(const HoloNet& net, const LWParams& params, double lambda);

/// x_theta = cosh(theta) x + sinh(theta) n, n_theta = sinh(theta) x + cosh(theta) n,
/// with s_theta = exp(-2 theta) s recorded on both provenances.
LiftedPair parallel_curved(const LiftedPair& pair, double theta);

/// g~ = e^theta g (tau, sigma unchanged) and s~ = e^{-2 theta} s; lifting the
/// returned data with frame seed E_init * diag(e^{-theta/2}, e^{theta/2})
/// reproduces parallel_curved's x_theta.
std::pair<HoloNet, double> reparametrized_weierstrass_data(const HoloNet& net, double s,
                                                           double theta);

/// Frame seed matching reparametrized_weierstrass_data.
Mat2C reparametrized_frame_seed(const Mat2C& E_init, double theta);

} // namespace sdlw
