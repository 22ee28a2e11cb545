#include "sdlw/minmax.hpp"

#include <cmath>
#include <sstream>

namespace sdlw {

namespace {

constexpr double kDenomTol = 1e-10;

double denom(cplx g, int eps) { return 1.0 + eps * std::norm(g); }

bool denom_ok(cplx g, int eps) { return std::abs(denom(g, eps)) > kDenomTol * (1.0 + std::norm(g)); }

Vec4 re3(cplx v0, cplx v1, cplx v2) { return {v0.real(), v1.real(), v2.real(), 0.0}; }

} // namespace

Vec4 normal_minmax(cplx g, int eps) {
    if (!denom_ok(g, eps)) throw DenominatorBlowup("normal undefined at 1+eps|g|^2 = 0");
    const double D = denom(g, eps);
    return {2 * eps * g.real() / D, 2 * eps * g.imag() / D, (1 - eps * std::norm(g)) / D, 0.0};
}

Vec4 dnormal_minmax(cplx g, cplx dg, int eps) {
    if (!denom_ok(g, eps)) throw DenominatorBlowup("normal undefined at 1+eps|g|^2 = 0");
    const double D = denom(g, eps);
    const double r = 2.0 * (std::conj(g) * dg).real();  // d|g|^2/dt
    return {2 * eps * (dg.real() * D - eps * r * g.real()) / (D * D),
            2 * eps * (dg.imag() * D - eps * r * g.imag()) / (D * D), -2 * eps * r / (D * D), 0.0};
}

Vec4 minmax_dx(cplx g, cplx dg, double tau, int eps) {
    const cplx c = double(eps) * tau / (2.0 * dg);
    return re3(c * (1.0 - double(eps) * g * g), c * cplx(0, 1) * (1.0 + double(eps) * g * g),
               c * (-2.0 * g));
}

Vec4 minmax_delta_x(cplx g, cplx g1, double sigma, int eps) {
    const cplx c = double(eps) * sigma / (2.0 * (g1 - g));
    return re3(c * (1.0 - double(eps) * g * g1), c * cplx(0, 1) * (1.0 + double(eps) * g * g1),
               c * (-(g + g1)));
}

Vec4 minmax_ddelta_x(cplx g, cplx g1, cplx dg, cplx dg1, double sigma, int eps) {
    const cplx u = g1 - g;
    const cplx c = double(eps) * sigma / (2.0 * u);
    const cplx dc = -double(eps) * sigma * (dg1 - dg) / (2.0 * u * u);
    const cplx p = dg * g1 + g * dg1;  // d(g g1)/dt
    const cplx w0 = 1.0 - double(eps) * g * g1, dw0 = -double(eps) * p;
    const cplx w1 = cplx(0, 1) * (1.0 + double(eps) * g * g1), dw1 = cplx(0, 1) * double(eps) * p;
    const cplx w2 = -(g + g1), dw2 = -(dg + dg1);
    return re3(dc * w0 + c * dw0, dc * w1 + c * dw1, dc * w2 + c * dw2);
}

namespace {

// quadrature of dx along the base strip (RK4 = Simpson here, RHS is x-free)
Vec4 quad_step(const HoloNet& net, int i, int eps, double t, double h) {
    auto f = [&](double tt) {
        return minmax_dx(net.g_at(i, tt), net.dg_at(i, tt), net.tau_at(tt), eps);
    };
    const Vec4 k1 = f(t), k2 = f(t + h / 2), k4 = f(t + h);
    return (k1 + k2 * 4.0 + k4) * (h / 6.0);
}

std::vector<double> bracket_crossings(const HoloNet& net, int i, int eps) {
    std::vector<double> out;
    if (eps != -1) return out;
    const int nt = net.grid.num_samples();
    auto f = [&](double t) { return 1.0 - std::norm(net.g_at(i, t)); };
    for (int j = 0; j + 1 < nt; ++j) {
        double a = net.grid.t(j), b = net.grid.t(j + 1);
        double fa = f(a), fb = f(b);
        if (fa == 0.0) out.push_back(a);
        if (fa * fb >= 0) continue;
        while (b - a > 1e-10) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            (fa * fm < 0 ? b : a) = m;
            (fa * fm < 0 ? fb : fa) = fm;
        }
        out.push_back(0.5 * (a + b));
    }
    const double tl = net.grid.t(nt - 1);
    if (f(tl) == 0.0) out.push_back(tl);
    return out;
}

} // namespace

SemiDiscreteSurface build_minmax(const HoloNet& net, int eps, const Vec4& base_point,
                                 const ODESettings& solver) {
    if (eps != 1 && eps != -1) throw ValidationError("eps must be +1 or -1");
    const NetReport rep = validate_net(net, 1e-8);
    if (!rep.pass) throw ValidationError("build_minmax: net is not semi-discrete isothermic: " + rep.message);

    const int nk = net.grid.num_strips(), nt = net.grid.num_samples();
    SemiDiscreteSurface S;
    S.grid = net.grid;
    S.ambient = eps == 1 ? AmbientMetric::r3() : AmbientMetric::r21();
    S.x = Grid<Vec4>(nk, nt);
    S.n = Grid<Vec4>(nk, nt);
    S.dx = Grid<Vec4>(nk, nt);
    S.dn = Grid<Vec4>(nk, nt);
    S.valid = Grid<std::uint8_t>(nk, nt, 1);
    S.sheet = Grid<std::int8_t>(nk, nt, 0);
    S.provenance.family = eps == 1 ? Family::Minimal : Family::Maximal;
    S.provenance.eps = eps;

    // base strip by quadrature, with a half-step error estimate
    const int nsub = std::max(1, (int)std::lround(net.grid.t_step / std::max(solver.step, 1e-12)));
    const double h = net.grid.t_step / nsub;
    Vec4 xcur = base_point;
    S.x(0, 0) = xcur;
    for (int j = 0; j + 1 < nt; ++j) {
        const double t0 = net.grid.t(j);
        Vec4 full = xcur, half = xcur;
        for (int s = 0; s < nsub; ++s) full += quad_step(net, 0, eps, t0 + s * h, h);
        for (int s = 0; s < 2 * nsub; ++s) half += quad_step(net, 0, eps, t0 + s * h / 2, h / 2);
        if ((full - half).norm() > solver.error_budget) {
            std::ostringstream os;
            os << "base-strip quadrature error estimate exceeds budget at t=" << t0;
            throw StepFailure(os.str());
        }
        xcur = full;
        S.x(0, j + 1) = xcur;
    }

    for (int j = 0; j < nt; ++j)
        for (int i = 0; i + 1 < nk; ++i)
            S.x(i + 1, j) = S.x(i, j) + minmax_delta_x(net.g(i, j), net.g(i + 1, j),
                                                       net.sigma[(size_t)i], eps);

    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const cplx g = net.g(i, j);
            S.dx(i, j) = minmax_dx(g, net.dg(i, j), net.tau[(size_t)j], eps);
            if (denom_ok(g, eps)) {
                S.n(i, j) = normal_minmax(g, eps);
                S.dn(i, j) = dnormal_minmax(g, net.dg(i, j), eps);
            } else {
                S.valid(i, j) = 0;
            }
        }

    S.crossings.resize((size_t)nk);
    for (int i = 0; i < nk; ++i) S.crossings[(size_t)i] = bracket_crossings(net, i, eps);
    return S;
}

PrincipalField principal_minmax_closed(const HoloNet& net, int eps) {
    const int nk = net.grid.num_strips(), nt = net.grid.num_samples();
    PrincipalField out;
    out.kappa = Grid<CurvatureValue>(nk, nt);
    out.kappa01 = Grid<CurvatureValue>(nk - 1, nt);

    auto rated = [](double num, double den) {
        if (std::abs(den) < 1e-10 * std::abs(num)) {
            const double p = num * den;
            return CurvatureValue::inf(p > 0 ? 1 : (p < 0 ? -1 : (num >= 0 ? 1 : -1)));
        }
        return CurvatureValue::finite(num / den);
    };

    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const cplx g = net.g(i, j);
            const double num = -4.0 * std::norm(net.dg(i, j));
            const double den = net.tau[(size_t)j] * denom(g, eps) * denom(g, eps);
            out.kappa(i, j) = rated(num, den);
        }
    for (int i = 0; i + 1 < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const cplx g = net.g(i, j), g1 = net.g(i + 1, j);
            const double num = -4.0 * std::norm(g1 - g);
            const double den = net.sigma[(size_t)i] * denom(g, eps) * denom(g1, eps);
            out.kappa01(i, j) = rated(num, den);
        }
    return out;
}

SemiDiscreteSurface parallel_flat(const SemiDiscreteSurface& S, double theta) {
    SemiDiscreteSurface P = S;
    for (int i = 0; i < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j) {
            if (!S.vertex_valid(i, j)) continue;
            P.x(i, j) = S.x(i, j) + S.n(i, j) * theta;
            P.dx(i, j) = S.dx(i, j) + S.dn(i, j) * theta;
        }
    P.provenance.parallel = P.provenance.parallel || theta != 0.0;
    P.provenance.theta = S.provenance.theta + theta;
    return P;
}

} // namespace sdlw
