#include "sdlw/frame.hpp"

#include <cmath>
#include <sstream>

namespace sdlw {

namespace {

Mat2C u_mat(cplx dg, double lam_tau) { return {0, dg, lam_tau / dg, 0}; }

Mat2C gap_mat(cplx delta_g, double lam_sigma) {
    return {1, delta_g, lam_sigma / delta_g, 1};  // I + M_Delta
}

Mat2C rk4_step(const HoloNet& net, int i, double lambda, const Mat2C& E, double t, double h) {
    auto U = [&](double tt) { return u_mat(net.dg_at(i, tt), lambda * net.tau_at(tt)); };
    const Mat2C k1 = E * U(t);
    const Mat2C k2 = (E + k1 * (h / 2)) * U(t + h / 2);
    const Mat2C k3 = (E + k2 * (h / 2)) * U(t + h / 2);
    const Mat2C k4 = (E + k3 * h) * U(t + h);
    return E + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

} // namespace

double FrameField::det_strip(int i) const {
    double d = E(0, 0).det().real();
    for (int p = 0; p < i; ++p) d *= 1.0 - lambda * holo.sigma[(size_t)p];
    return d;
}

FrameField integrate_frame(const HoloNet& net, double lambda, const Mat2C& E_init,
                           const ODESettings& solver) {
    if (lambda == 0.0) throw ValidationError("integrate_frame: lambda must be nonzero");
    for (double s : net.sigma)
        if (std::abs(1.0 - lambda * s) < 1e-12)
            throw ValidationError("integrate_frame: 1 - lambda*sigma vanishes on a gap");
    const cplx d0 = E_init.det();
    if (std::abs(d0) < 1e-12) throw ValidationError("integrate_frame: E_init is singular");
    if (std::abs(d0.imag()) > 1e-12 * std::abs(d0))
        throw ValidationError("integrate_frame: E_init must have real determinant");

    const int nk = net.grid.num_strips(), nt = net.grid.num_samples();
    FrameField F;
    F.grid = net.grid;
    F.lambda = lambda;
    F.holo = net;
    F.E = Grid<Mat2C>(nk, nt);

    const int nsub = std::max(1, (int)std::lround(net.grid.t_step / std::max(solver.step, 1e-12)));
    const double h = net.grid.t_step / nsub;

    F.E(0, 0) = E_init;
    for (int j = 0; j + 1 < nt; ++j) {
        const double t0 = net.grid.t(j);
        Mat2C full = F.E(0, j), half = F.E(0, j);
        for (int s = 0; s < nsub; ++s) full = rk4_step(net, 0, lambda, full, t0 + s * h, h);
        for (int s = 0; s < 2 * nsub; ++s) half = rk4_step(net, 0, lambda, half, t0 + s * h / 2, h / 2);
        if ((full - half).norm() > solver.error_budget) {
            std::ostringstream os;
            os << "frame integration error estimate exceeds budget at t=" << t0;
            throw StepFailure(os.str());
        }
        F.E(0, j + 1) = full;
    }
    for (int i = 0; i + 1 < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const cplx dg = net.g(i + 1, j) - net.g(i, j);
            F.E(i + 1, j) = F.E(i, j) * gap_mat(dg, lambda * net.sigma[(size_t)i]);
        }

    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j)
            if (std::abs(F.E(i, j).det()) < 1e-12)
                throw DegenerateFrame("frame determinant decayed below threshold");
    return F;
}

FrameReport validate_frame(const FrameField& F) {
    FrameReport rep;
    rep.min_abs_det = 1e300;
    const int nk = F.grid.num_strips(), nt = F.grid.num_samples();
    const double h = F.grid.t_step;
    const HoloNet& net = F.holo;

    for (int i = 0; i < nk; ++i) {
        for (int j = 0; j < nt; ++j) {
            rep.min_abs_det = std::min(rep.min_abs_det, std::abs(F.E(i, j).det()));
            if (j >= 2 && j + 2 < nt) {
                // 5-point central difference of E along t
                const Mat2C dE =
                    (F.E(i, j - 2) - F.E(i, j + 2) + (F.E(i, j + 1) - F.E(i, j - 1)) * 8.0) *
                    (1.0 / (12.0 * h));
                const Mat2C R = F.E(i, j).inverse() * dE -
                                u_mat(net.dg(i, j), F.lambda * net.tau[(size_t)j]);
                rep.max_t_residual = std::max(rep.max_t_residual, R.norm());
            }
            if (i + 1 < nk) {
                const cplx delta_g = net.g(i + 1, j) - net.g(i, j);
                const Mat2C R = F.E(i, j).inverse() * (F.E(i + 1, j) - F.E(i, j)) -
                                Mat2C{0, delta_g, F.lambda * net.sigma[(size_t)i] / delta_g, 0};
                rep.max_gap_residual = std::max(rep.max_gap_residual, R.norm());
            }
        }
    }

    // mixed consistency: re-integrate strip i along t from its first sample
    ODESettings s;
    s.step = F.grid.t_step;
    s.error_budget = 1e300;
    for (int i = 1; i < nk; ++i) {
        Mat2C E = F.E(i, 0);
        for (int j = 0; j + 1 < nt; ++j) {
            E = rk4_step(net, i, F.lambda, E, F.grid.t(j), h);
            rep.max_mixed_residual = std::max(rep.max_mixed_residual, (E - F.E(i, j + 1)).norm());
        }
    }
    return rep;
}

} // namespace sdlw
