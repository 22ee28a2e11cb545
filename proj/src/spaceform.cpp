#include "sdlw/spaceform.hpp"

#include <cmath>

namespace sdlw {

namespace {

Mat2C p_mat(cplx g, double s) {
    const double T = 1.0 + s * std::norm(g);
    return {T, -s * g, -s * std::conj(g), (1.0 + s * s * std::norm(g)) / T};
}

Mat2C q_mat(cplx g, double s) {
    const double T = 1.0 + s * std::norm(g);
    return {-T, s * g, s * std::conj(g), (1.0 - s * s * std::norm(g)) / T};
}

Mat2C dp_mat(cplx g, cplx dg, double s) {
    const double T = 1.0 + s * std::norm(g);
    const double r = 2.0 * (std::conj(g) * dg).real();  // d|g|^2/dt
    const double dT = s * r;
    return {dT, -s * dg, -s * std::conj(dg),
            (s * s * r * T - (1.0 + s * s * std::norm(g)) * dT) / (T * T)};
}

Mat2C dq_mat(cplx g, cplx dg, double s) {
    const double T = 1.0 + s * std::norm(g);
    const double r = 2.0 * (std::conj(g) * dg).real();
    const double dT = s * r;
    return {-dT, s * dg, s * std::conj(dg),
            (-s * s * r * T - (1.0 - s * s * std::norm(g)) * dT) / (T * T)};
}

Mat2C u_mat(cplx dg, double lam_tau) { return {0, dg, lam_tau / dg, 0}; }

} // namespace

LiftedPair lift_surface(const FrameField& frame, const LWParams& params) {
    const HoloNet& net = frame.holo;
    const int nk = frame.grid.num_strips(), nt = frame.grid.num_samples();
    const double s = params.s;
    const AmbientMetric mink = AmbientMetric::minkowski();

    LiftedPair out;
    for (SemiDiscreteSurface* S : {&out.x, &out.n}) {
        S->grid = frame.grid;
        S->x = Grid<Vec4>(nk, nt);
        S->n = Grid<Vec4>(nk, nt);
        S->dx = Grid<Vec4>(nk, nt);
        S->dn = Grid<Vec4>(nk, nt);
        S->valid = Grid<std::uint8_t>(nk, nt, 1);
        S->sheet = Grid<std::int8_t>(nk, nt, 0);
        S->crossings.assign((size_t)nk, {});
    }

    for (int i = 0; i < nk; ++i) {
        for (int j = 0; j < nt; ++j) {
            // pointwise determinant: keeps det(x) = det(P) exact, so the
            // quadric constraints hold to rounding even at coarse solver steps
            const double det = frame.E(i, j).det().real();
            const cplx g = net.g(i, j), dg = net.dg(i, j);
            const double T = 1.0 + s * std::norm(g);
            if (std::abs(T) < 1e-10)
                throw GenericityViolation("1 + s|g|^2 vanishes at a used grid point");
            const Mat2C& E = frame.E(i, j);
            const Mat2C Ed = E.conj_transpose();
            const Mat2C U = u_mat(dg, frame.lambda * net.tau[(size_t)j]);
            const Mat2C P = p_mat(g, s), Q = q_mat(g, s);

            const Mat2C X = (E * P * Ed) * (1.0 / det);
            const Mat2C N = (E * Q * Ed) * (1.0 / det);
            const Mat2C dX = (E * (U * P + dp_mat(g, dg, s) + P * U.conj_transpose()) * Ed) * (1.0 / det);
            const Mat2C dN = (E * (U * Q + dq_mat(g, dg, s) + Q * U.conj_transpose()) * Ed) * (1.0 / det);

            const Vec4 xv = unembed(X, mink), nv = unembed(N, mink);
            const Vec4 dxv = unembed(dX, mink), dnv = unembed(dN, mink);
            out.x.x(i, j) = xv;
            out.x.n(i, j) = nv;
            out.x.dx(i, j) = dxv;
            out.x.dn(i, j) = dnv;
            out.x.sheet(i, j) = T > 0 ? 1 : -1;
            out.n.x(i, j) = nv;
            out.n.n(i, j) = xv;
            out.n.dx(i, j) = dnv;
            out.n.dn(i, j) = dxv;
            out.n.sheet(i, j) = out.x.sheet(i, j);
        }
    }

    out.x.ambient = AmbientMetric::h3(out.x.sheet(0, 0) > 0);
    out.n.ambient = AmbientMetric::s21();
    out.x.provenance = {Family::BrLW, 0, s, frame.lambda, 0, false};
    out.n.provenance = {Family::BiLW, 0, s, frame.lambda, 0, false};
    return out;
}

PrincipalField principal_curved_closed(const HoloNet& net, const LWParams& params, double lambda) {
    const int nk = net.grid.num_strips(), nt = net.grid.num_samples();
    const double s = params.s;
    PrincipalField out;
    out.kappa = Grid<CurvatureValue>(nk, nt);
    out.kappa01 = Grid<CurvatureValue>(nk - 1, nt);

    auto rated = [](double num, double den) {
        if (std::abs(den) < 1e-10 * std::max(std::abs(num), 1e-300)) {
            const double p = num * den;
            return CurvatureValue::inf(p > 0 ? 1 : (p < 0 ? -1 : (num >= 0 ? 1 : -1)));
        }
        return CurvatureValue::finite(num / den);
    };

    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const double p2 = std::norm(net.dg(i, j));
            const double al = 1.0 + s * std::norm(net.g(i, j));
            const double lt = lambda * net.tau[(size_t)j];
            out.kappa(i, j) = rated(p2 * (-1 - s) + al * al * lt, p2 * (1 - s) + al * al * lt);
        }
    for (int i = 0; i + 1 < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const double q2 = std::norm(net.g(i + 1, j) - net.g(i, j));
            const double al = 1.0 + s * std::norm(net.g(i, j));
            const double al1 = 1.0 + s * std::norm(net.g(i + 1, j));
            const double ls = lambda * net.sigma[(size_t)i];
            out.kappa01(i, j) =
                rated(q2 * (-1 - s) + al * al1 * ls, q2 * (1 - s) + al * al1 * ls);
        }
    return out;
}

LiftedPair parallel_curved(const LiftedPair& pair, double theta) {
    const double ch = std::cosh(theta), sh = std::sinh(theta);
    LiftedPair out = pair;
    const int nk = pair.x.num_strips(), nt = pair.x.num_samples();
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const Vec4 x = pair.x.x(i, j), n = pair.x.n(i, j);
            const Vec4 dx = pair.x.dx(i, j), dn = pair.x.dn(i, j);
            const Vec4 xt = x * ch + n * sh, nt_ = x * sh + n * ch;
            const Vec4 dxt = dx * ch + dn * sh, dnt = dx * sh + dn * ch;
            out.x.x(i, j) = xt;
            out.x.n(i, j) = nt_;
            out.x.dx(i, j) = dxt;
            out.x.dn(i, j) = dnt;
            out.n.x(i, j) = nt_;
            out.n.n(i, j) = xt;
            out.n.dx(i, j) = dnt;
            out.n.dn(i, j) = dxt;
        }
    const double s_theta = std::exp(-2.0 * theta) * pair.x.provenance.s;
    for (SemiDiscreteSurface* S : {&out.x, &out.n}) {
        S->provenance.s = s_theta;
        S->provenance.theta = pair.x.provenance.theta + theta;
        S->provenance.parallel = S->provenance.parallel || theta != 0.0;
    }
    // sheet of x_theta follows sign(x_theta . x_theta interior product with e0)
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j)
            out.x.sheet(i, j) = out.x.x(i, j)[3] > 0 ? 1 : -1;
    out.x.ambient = AmbientMetric::h3(out.x.sheet(0, 0) > 0);
    return out;
}

std::pair<HoloNet, double> reparametrized_weierstrass_data(const HoloNet& net, double s,
                                                           double theta) {
    HoloNet out = net;
    const double f = std::exp(theta);
    for (int i = 0; i < net.grid.num_strips(); ++i)
        for (int j = 0; j < net.grid.num_samples(); ++j) {
            out.g(i, j) = f * net.g(i, j);
            out.dg(i, j) = f * net.dg(i, j);
        }
    return {out, std::exp(-2.0 * theta) * s};
}

Mat2C reparametrized_frame_seed(const Mat2C& E_init, double theta) {
    const Mat2C D{std::exp(-theta / 2), 0, 0, std::exp(theta / 2)};
    return E_init * D;
}

} // namespace sdlw
