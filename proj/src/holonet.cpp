#include "sdlw/holonet.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sdlw {

namespace {

int clamp_cell(const GridSpec& grid, double t) {
    int j = static_cast<int>(std::floor((t - grid.t_min) / grid.t_step));
    return std::clamp(j, 0, grid.num_samples() - 2);
}

cplx hermite(double t0, double h, cplx y0, cplx y1, cplx d0, cplx d1, double t) {
    const double u = (t - t0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
}

// cubic Lagrange through 4 consecutive samples, window clamped at the ends
template <class Get>
auto lagrange4(const GridSpec& grid, int n, double t, Get&& get) {
    int j = clamp_cell(grid, t);
    int lo = std::clamp(j - 1, 0, std::max(0, n - 4));
    int m = std::min(4, n - lo);
    using R = decltype(get(0));
    R acc{};
    for (int p = 0; p < m; ++p) {
        double w = 1.0;
        const double tp = grid.t(lo + p);
        for (int q = 0; q < m; ++q) {
            if (q == p) continue;
            w *= (t - grid.t(lo + q)) / (tp - grid.t(lo + q));
        }
        acc += get(lo + p) * w;
    }
    return acc;
}

} // namespace

cplx HoloNet::g_at(int i, double t) const {
    const int j = clamp_cell(grid, t);
    return hermite(grid.t(j), grid.t_step, g(i, j), g(i, j + 1), dg(i, j), dg(i, j + 1), t);
}

cplx HoloNet::dg_at(int i, double t) const {
    return lagrange4(grid, grid.num_samples(), t, [&](int j) { return dg(i, j); });
}

double HoloNet::tau_at(double t) const {
    return lagrange4(grid, grid.num_samples(), t, [&](int j) { return tau[(size_t)j]; });
}

HoloNet make_linear_net(double a, double b, const GridSpec& grid) {
    if (a == 0.0 || b == 0.0) throw ValidationError("linear net requires a != 0 and b != 0");
    grid.validate();
    HoloNet net;
    net.grid = grid;
    const int nk = grid.num_strips(), nt = grid.num_samples();
    net.g = Grid<cplx>(nk, nt);
    net.dg = Grid<cplx>(nk, nt);
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            net.g(i, j) = cplx(a * grid.k(i), b * grid.t(j));
            net.dg(i, j) = cplx(0, b);
        }
    net.tau.assign((size_t)nt, -b * b);
    net.sigma.assign((size_t)grid.num_gaps(), a * a);
    return net;
}

namespace {

struct StripSampler {
    const GridSpec& grid;
    const Strip& base;
    const std::vector<double>& tau;

    cplx g(double t) const {
        const int j = clamp_cell(grid, t);
        return hermite(grid.t(j), grid.t_step, base.g[(size_t)j], base.g[(size_t)j + 1],
                       base.dg[(size_t)j], base.dg[(size_t)j + 1], t);
    }
    cplx dg(double t) const {
        return lagrange4(grid, (int)base.dg.size(), t, [&](int j) { return base.dg[(size_t)j]; });
    }
    double tau_at(double t) const {
        return lagrange4(grid, (int)tau.size(), t, [&](int j) { return tau[(size_t)j]; });
    }
};

} // namespace

Strip propagate_strip(const GridSpec& grid, const Strip& base, const std::vector<double>& tau,
                      double sigma_k, cplx g1_init, const ODESettings& solver) {
    grid.validate();
    const int nt = grid.num_samples();
    if ((int)base.g.size() != nt || (int)base.dg.size() != nt || (int)tau.size() != nt)
        throw ValidationError("propagate_strip: sample counts do not match the grid");
    if (sigma_k == 0.0) throw ValidationError("propagate_strip: sigma_k must be nonzero");
    if (std::abs(g1_init - base.g[0]) < 1e-10)
        throw ValidationError("propagate_strip: g1_init coincides with the base strip");
    for (int j = 0; j < nt; ++j)
        if (tau[(size_t)j] / sigma_k >= 0)
            throw ValidationError("propagate_strip: tau/sigma must be negative on the strip");

    const StripSampler S{grid, base, tau};
    auto rhs = [&](double t, cplx y) {
        const cplx delta = y - S.g(t);
        if (std::abs(delta) < 1e-10)
            throw CollisionError("propagated strip collided with the base strip");
        return (S.tau_at(t) / sigma_k) * delta * delta / S.dg(t);
    };
    auto rk4_step = [&](double t, cplx y, double h) {
        const cplx k1 = rhs(t, y);
        const cplx k2 = rhs(t + h / 2, y + h / 2 * k1);
        const cplx k3 = rhs(t + h / 2, y + h / 2 * k2);
        const cplx k4 = rhs(t + h, y + h * k3);
        return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };

    const int nsub = std::max(1, (int)std::lround(grid.t_step / std::max(solver.step, 1e-12)));
    const double h = grid.t_step / nsub;

    // a transversal crossing of the base strip flips the phase of Delta g
    // within one step without any evaluation landing inside the 1e-10 ball
    auto crossed_base = [](cplx w0, cplx w1) {
        if ((w0 * std::conj(w1)).real() >= 0) return false;
        const cplx u = w1 - w0;
        const double seg_dist = std::abs((std::conj(u) * w0).imag()) / std::abs(u);
        return seg_dist < 0.25 * std::min(std::abs(w0), std::abs(w1));
    };

    Strip out;
    out.g.resize((size_t)nt);
    out.dg.resize((size_t)nt);
    cplx y = g1_init;
    out.g[0] = y;
    out.dg[0] = rhs(grid.t_min, y);
    for (int j = 0; j + 1 < nt; ++j) {
        const double t0 = grid.t(j);
        cplx yf = y, yh = y;
        for (int s = 0; s < nsub; ++s) yf = rk4_step(t0 + s * h, yf, h);
        for (int s = 0; s < 2 * nsub; ++s) yh = rk4_step(t0 + s * h / 2, yh, h / 2);
        if (std::abs(yf - yh) > solver.error_budget) {
            std::ostringstream os;
            os << "propagate_strip: local error estimate " << std::abs(yf - yh)
               << " exceeds budget " << solver.error_budget << " at t=" << t0;
            throw StepFailure(os.str());
        }
        if (crossed_base(y - S.g(t0), yf - S.g(grid.t(j + 1))))
            throw CollisionError("propagated strip crossed the base strip");
        y = yf;
        out.g[(size_t)j + 1] = y;
        out.dg[(size_t)j + 1] = rhs(grid.t(j + 1), y);
    }
    return out;
}

HoloNet propagate_net(const GridSpec& grid, const Strip& base, const std::vector<double>& tau,
                      const std::vector<double>& sigmas, const std::vector<cplx>& seeds,
                      const ODESettings& solver) {
    grid.validate();
    const int nk = grid.num_strips(), nt = grid.num_samples();
    if ((int)sigmas.size() != nk - 1 || (int)seeds.size() != nk - 1)
        throw ValidationError("propagate_net: need one sigma and one seed per k-gap");

    HoloNet net;
    net.grid = grid;
    net.g = Grid<cplx>(nk, nt);
    net.dg = Grid<cplx>(nk, nt);
    net.tau = tau;
    net.sigma = sigmas;

    Strip cur = base;
    for (int j = 0; j < nt; ++j) {
        net.g(0, j) = cur.g[(size_t)j];
        net.dg(0, j) = cur.dg[(size_t)j];
    }
    for (int i = 0; i + 1 < nk; ++i) {
        cur = propagate_strip(grid, cur, tau, sigmas[(size_t)i], seeds[(size_t)i], solver);
        for (int j = 0; j < nt; ++j) {
            net.g(i + 1, j) = cur.g[(size_t)j];
            net.dg(i + 1, j) = cur.dg[(size_t)j];
        }
    }
    return net;
}

NetReport validate_net(const HoloNet& net, double tol) {
    NetReport rep;
    const int nk = net.grid.num_strips(), nt = net.grid.num_samples();
    rep.min_abs_dg = 1e300;
    rep.min_abs_delta_g = 1e300;
    if ((int)net.tau.size() != nt || (int)net.sigma.size() != nk - 1 || net.g.nk != nk) {
        rep.message = "shape mismatch between grid and samples";
        return rep;
    }
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j)
            rep.min_abs_dg = std::min(rep.min_abs_dg, std::abs(net.dg(i, j)));
    for (int i = 0; i + 1 < nk; ++i) {
        for (int j = 0; j < nt; ++j) {
            const cplx delta = net.g(i + 1, j) - net.g(i, j);
            rep.min_abs_delta_g = std::min(rep.min_abs_delta_g, std::abs(delta));
            const double target = net.tau[(size_t)j] / net.sigma[(size_t)i];
            if (target >= 0) rep.sign_ok = false;
            if (std::abs(delta) == 0.0 || std::abs(net.dg(i, j)) == 0.0) continue;
            const cplx cr = net.dg(i, j) * net.dg(i + 1, j) / (delta * delta);
            const double res = std::abs(cr - target) / std::abs(target);
            if (res > rep.max_residual) {
                rep.max_residual = res;
                rep.worst_k = net.grid.k(i);
                rep.worst_t = net.grid.t(j);
            }
        }
    }
    rep.pass = rep.sign_ok && rep.max_residual < tol && rep.min_abs_dg > 0 && rep.min_abs_delta_g > 0;
    if (!rep.sign_ok)
        rep.message = "tau/sigma fails to be negative somewhere";
    else if (rep.max_residual >= tol) {
        std::ostringstream os;
        os << "factorization residual " << rep.max_residual << " at k=" << rep.worst_k
           << ", t=" << rep.worst_t;
        rep.message = os.str();
    }
    return rep;
}

} // namespace sdlw
