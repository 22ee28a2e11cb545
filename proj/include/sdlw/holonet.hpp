#pragma once

#include <complex>
#include <vector>

#include "sdlw/ambient.hpp"
#include "sdlw/grid.hpp"

namespace sdlw {

/// Fixed-step RK4 with a half-step Richardson error estimate.
struct ODESettings {
    double step = 1e-3;
    enum class Method { RK4 } method = Method::RK4;
    double error_budget = 1e-8;
};

/// One strip of a semi-discrete net: values and analytic t-derivatives on the
/// grid's t-samples.
struct Strip {
    std::vector<cplx> g;
    std::vector<cplx> dg;
};

/// Semi-discrete holomorphic function g(k,t) with cross-ratio factorizers:
/// dg * dg_1 / (Delta g)^2 = tau(t) / sigma(k) < 0 at every sample.
/// tau is attached to t-samples, sigma to the k-gap k -> k+1.
struct HoloNet {
    GridSpec grid;
    Grid<cplx> g;
    Grid<cplx> dg;
    std::vector<double> tau;    // one per t-sample
    std::vector<double> sigma;  // one per k-gap

    /// Cubic Hermite interpolation of g along strip i (exact for the linear family).
    cplx g_at(int i, double t) const;
    /// 4-point Lagrange interpolation of the derivative samples.
    cplx dg_at(int i, double t) const;
    double tau_at(double t) const;
};

/// g(k,t) = a k + i b t with tau = -b^2, sigma = a^2; exact up to rounding.
HoloNet make_linear_net(double a, double b, const GridSpec& grid);

/// Solves d g1 / dt = (tau(t)/sigma_k) (g1 - g_k)^2 / dg_k from g1(t_min) = g1_init,
/// landing on the grid's t-samples. The returned derivative samples are the ODE
/// right-hand side, so the factorization holds on the new gap by construction.
/// Throws CollisionError when |g1 - g_k| < 1e-10 during integration and
/// StepFailure when the Richardson estimate exceeds solver.error_budget.
Strip propagate_strip(const GridSpec& grid, const Strip& base, const std::vector<double>& tau,
                      double sigma_k, cplx g1_init, const ODESettings& solver);

/// Builds a net strip by strip from a base strip, per-gap sigmas and seeds.
HoloNet propagate_net(const GridSpec& grid, const Strip& base, const std::vector<double>& tau,
                      const std::vector<double>& sigmas, const std::vector<cplx>& seeds,
                      const ODESettings& solver);

struct NetReport {
    bool pass = false;
    double max_residual = 0;  // relative factorization residual
    int worst_k = 0;
    double worst_t = 0;
    double min_abs_dg = 0;
    double min_abs_delta_g = 0;
    bool sign_ok = true;  // tau/sigma < 0 everywhere
    std::string message;
};

/// Diagnostic check of the three HoloNet invariants; never throws.
NetReport validate_net(const HoloNet& net, double tol);

} // namespace sdlw
