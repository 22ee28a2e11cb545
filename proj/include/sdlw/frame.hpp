#pragma once

#include "sdlw/holonet.hpp"

namespace sdlw {

/// Moving frame E(k,t) in GL2C solving
///   E^{-1} dE = [[0, dg], [lambda tau / dg, 0]],
///   E^{-1} Delta E = [[0, Dg], [lambda sigma / Dg, 0]].
/// det E is t-independent and scales by (1 - lambda sigma) across each gap.
struct FrameField {
    GridSpec grid;
    Grid<Mat2C> E;
    double lambda = 0;
    HoloNet holo;  // generating net

    /// Real determinant on strip i (constant along t).
    double det_strip(int i) const;
};

/// Integrates the frame: RK4 along t on the base strip, exact gap factors
/// E1 = E (I + M_Delta) across k. E_init must be invertible with real
/// determinant. Throws DegenerateFrame when |det E| decays below 1e-12.
FrameField integrate_frame(const HoloNet& net, double lambda, const Mat2C& E_init,
                           const ODESettings& solver);

struct FrameReport {
    double max_t_residual = 0;      // Eq.-(3) smooth relation, 5-point FD check
    double max_gap_residual = 0;    // Eq.-(3) discrete relation (exact by construction)
    double max_mixed_residual = 0;  // (d then Delta) vs (Delta then d) consistency
    double min_abs_det = 0;
};

/// Diagnostic residuals of the frame equations; finite differences are used
/// only here, as an independent check of the stored frames.
FrameReport validate_frame(const FrameField& F);

} // namespace sdlw
