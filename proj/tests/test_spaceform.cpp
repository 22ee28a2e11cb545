#include <doctest.h>

#include <cmath>

#include "sdlw/spaceform.hpp"
#include "test_helpers.hpp"

using namespace sdlw;

namespace {

// no sample at t = 0, so |g| = 1 is avoided on the k = +-1 strips
const GridSpec kGrid{-2, 2, -0.475, 0.475, 0.05};

FrameField frame_for(double lambda, const GridSpec& grid = kGrid, double a = 1, double b = 1) {
    const HoloNet net = make_linear_net(a, b, grid);
    ODESettings solver;
    solver.step = grid.t_step;
    return integrate_frame(net, lambda, Mat2C::identity(), solver);
}

// closed-form exp(t U) for the linear net (U constant in t with U^2 = lambda tau I)
Mat2C exp_tu(double t, cplx dg, double lam_tau) {
    const Mat2C U{0, dg, lam_tau / dg, 0};
    const double mu2 = lam_tau;
    double c, s;
    if (mu2 >= 0) {
        const double m = std::sqrt(mu2);
        c = std::cosh(m * t);
        s = m == 0 ? t : std::sinh(m * t) / m;
    } else {
        const double m = std::sqrt(-mu2);
        c = std::cos(m * t);
        s = std::sin(m * t) / m;
    }
    return Mat2C::identity() * cplx(c, 0) + U * cplx(s, 0);
}

} // namespace

TEST_CASE("frame preconditions") {
    const HoloNet net = make_linear_net(1, 1, kGrid);
    CHECK_THROWS_AS(integrate_frame(net, 1.0, Mat2C::identity(), ODESettings{}), ValidationError);
    CHECK_THROWS_AS(integrate_frame(net, 0.0, Mat2C::identity(), ODESettings{}), ValidationError);
    CHECK_THROWS_AS(integrate_frame(net, 0.1, Mat2C{0, 0, 0, 0}, ODESettings{}), ValidationError);
    const Mat2C complex_det{cplx(1, 1), 0, 0, 1};
    CHECK_THROWS_AS(integrate_frame(net, 0.1, complex_det, ODESettings{}), ValidationError);
}

TEST_CASE("frame determinant decay is detected") {
    // 1 - lambda sigma = 1e-10 per gap shrinks det E below the threshold
    const HoloNet net = make_linear_net(1, 1, {0, 4, 0.0, 0.2, 0.1});
    ODESettings solver;
    solver.step = 0.1;
    CHECK_THROWS_AS(integrate_frame(net, 1.0 - 1e-10, Mat2C::identity(), solver),
                    DegenerateFrame);
}

TEST_CASE("frame residuals and mixed-evolution consistency") {
    const FrameField F = frame_for(0.1);
    const FrameReport rep = validate_frame(F);
    CHECK(rep.max_t_residual < 1e-6);
    CHECK(rep.max_gap_residual < 1e-8);
    CHECK(rep.max_mixed_residual < 1e-6);
    CHECK(rep.min_abs_det > 1e-12);
}

TEST_CASE("frame integration matches the matrix exponential at fourth order") {
    auto err_for = [](double h) {
        const GridSpec grid{0, 1, 0.0, 1.0, h};
        const HoloNet net = make_linear_net(1, 1, grid);
        ODESettings solver;
        solver.step = h;
        solver.error_budget = 1.0;
        const FrameField F = integrate_frame(net, 0.1, Mat2C::identity(), solver);
        double err = 0;
        for (int j = 0; j < grid.num_samples(); ++j) {
            const Mat2C exact = exp_tu(grid.t(j), cplx(0, 1), 0.1 * -1.0);
            err = std::max(err, (F.E(0, j) - exact).norm());
        }
        return err;
    };
    const double e1 = err_for(0.05), e2 = err_for(0.025);
    CHECK(e1 / e2 > 16 * 0.7);
    CHECK(e1 / e2 < 16 * 1.3);
}

TEST_CASE("frame determinant tracks the gap factors") {
    const FrameField F = frame_for(0.25);
    for (int i = 0; i < F.grid.num_strips(); ++i) {
        const double expected = F.det_strip(i);
        for (int j = 0; j < F.grid.num_samples(); j += 10)
            CHECK(std::abs(F.E(i, j).det() - cplx(expected, 0)) < 1e-9 * std::abs(expected));
    }
}

TEST_CASE("lifted pair satisfies the quadric constraints") {
    const AmbientMetric mink = AmbientMetric::minkowski();
    for (double s : {-1.0, -0.5, 0.5, 1.0})
        for (double lambda : {0.1, -0.01}) {
            // s < 0 on the a=2 net, which keeps |1+s|g|^2| >= 0.8
            const FrameField F = frame_for(lambda, kGrid, s < 0 ? 2 : 1);
            const LiftedPair pair = lift_surface(F, LWParams{s});
            for (int i = 0; i < pair.x.num_strips(); ++i)
                for (int j = 0; j < pair.x.num_samples(); j += 9) {
                    const Vec4 x = pair.x.x(i, j), n = pair.x.n(i, j);
                    CHECK(std::abs(inner(x, x, mink) + 1) < 1e-8);
                    CHECK(std::abs(inner(n, n, mink) - 1) < 1e-8);
                    CHECK(std::abs(inner(x, n, mink)) < 1e-8);
                }
        }
}

TEST_CASE("sheet tags follow the sign of 1 + s|g|^2") {
    // s = -0.5: strips k = +-2 have T < 0 (|g|^2 >= 4), inner strips T > 0
    const FrameField F = frame_for(0.1);
    const LiftedPair pair = lift_surface(F, LWParams{-0.5});
    for (int j = 0; j < pair.x.num_samples(); j += 11) {
        CHECK(pair.x.sheet(0, j) == -1);
        CHECK(pair.x.sheet(2, j) == 1);
        CHECK(pair.x.sheet(4, j) == -1);
        // H3- sheet means x0 < 0 after the sgn(T) normalization
        CHECK(pair.x.x(0, j)[3] < 0);
        CHECK(pair.x.x(2, j)[3] > 0);
    }
}

TEST_CASE("genericity violation is detected") {
    // s = -1 with a sample at |g| = 1 (k=1, t=0)
    const GridSpec grid{-1, 1, -0.5, 0.5, 0.25};
    const HoloNet net = make_linear_net(1, 1, grid);
    ODESettings solver;
    solver.step = grid.t_step;
    const FrameField F = integrate_frame(net, 0.01, Mat2C::identity(), solver);
    CHECK_THROWS_AS(lift_surface(F, LWParams{-1.0}), GenericityViolation);
}

TEST_CASE("Lemma-4.2 parallelism of the lifted pair") {
    const FrameField F = frame_for(0.1);
    const LiftedPair pair = lift_surface(F, LWParams{0.5});
    for (int i = 0; i + 1 < pair.x.num_strips(); ++i)
        for (int j = 0; j < pair.x.num_samples(); j += 7) {
            const EdgeVectors ex = x_edge(pair.x, i, j);
            const EdgeVectors en = n_edge(pair.x, i, j);
            // parallelism via the largest normalized 2x2 minor
            auto minor_residual = [](const Vec4& u, const Vec4& v) {
                double worst = 0;
                for (int p = 0; p < 4; ++p)
                    for (int q = p + 1; q < 4; ++q)
                        worst = std::max(worst, std::abs(u[p] * v[q] - u[q] * v[p]));
                return worst / (u.norm() * v.norm());
            };
            CHECK(minor_residual(ex.d, en.d) < 1e-8);
            CHECK(minor_residual(ex.D, en.D) < 1e-8);
        }
}

TEST_CASE("Eq.-(6) closed forms match the fitted curvatures") {
    for (double s : {-1.0, 0.0, 0.5}) {
        const double lambda = 0.1;
        const FrameField F = frame_for(lambda);
        const LiftedPair pair = lift_surface(F, LWParams{s});
        const PrincipalField pf = principal_curved_closed(F.holo, LWParams{s}, lambda);
        for (int i = 0; i < pair.x.num_strips(); ++i)
            for (int j = 0; j < pair.x.num_samples(); j += 5) {
                const PrincipalCurvature fit = fit_principal_smooth(pair.x, i, j);
                CHECK(std::abs(fit.kappa.value - pf.kappa(i, j).value) <
                      1e-6 * std::max(1.0, std::abs(pf.kappa(i, j).value)));
                if (i + 1 < pair.x.num_strips()) {
                    const PrincipalCurvature fe = fit_principal_edge(pair.x, i, j);
                    CHECK(std::abs(fe.kappa.value - pf.kappa01(i, j).value) <
                          1e-6 * std::max(1.0, std::abs(pf.kappa01(i, j).value)));
                }
            }
    }
}

TEST_CASE("Eq.-(6) at s = 0 reduces to the displayed quotient") {
    const HoloNet net = make_linear_net(1, 1, kGrid);
    const PrincipalField pf = principal_curved_closed(net, LWParams{0.0}, 0.1);
    const double lt = 0.1 * -1.0;  // lambda tau
    const double expected = (-1.0 + lt) / (1.0 + lt);  // |dg|^2 = 1
    for (int j = 0; j < net.grid.num_samples(); j += 17)
        CHECK(pf.kappa(2, j).value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("Eq.-(6) flags a vanishing denominator") {
    // |dg|^2 (1-s) + (1+s|g|^2)^2 lambda tau = 0 at g=0 for s=3, lambda=-2, tau=-1
    const GridSpec grid{-1, 1, -0.5, 0.5, 0.25};
    const HoloNet net = make_linear_net(1, 1, grid);
    const PrincipalField pf = principal_curved_closed(net, LWParams{3.0}, -2.0);
    CHECK(pf.kappa(1, 2).infinite);  // k=0, t=0
}

TEST_CASE("CMC1 case: the n-surface has H = 1") {
    const FrameField F = frame_for(0.1);
    const LiftedPair pair = lift_surface(F, LWParams{-1.0});
    const WeingartenReport rep = weingarten_residual(pair.n, WeingartenRelation::bilw(-1.0));
    CHECK(rep.evaluated > 0);
    CHECK(rep.max_residual < 1e-6);
    // 2s(H-1) - (1+s)(K-1) = 0 at s = -1 forces H = 1
    for (int j = 0; j < pair.n.num_samples(); j += 13) {
        const EdgeCurvatures ec = gauss_mean_mixed(pair.n, 1, j);
        CHECK(std::abs(ec.H.value - 1.0) < 1e-6);
    }
}

TEST_CASE("K of x times K of n is 1 on every edge") {
    const FrameField F = frame_for(0.1);
    const LiftedPair pair = lift_surface(F, LWParams{0.5});
    for (int i = 0; i + 1 < pair.x.num_strips(); ++i)
        for (int j = 0; j < pair.x.num_samples(); j += 7) {
            const EdgeCurvatures kx = gauss_mean_mixed(pair.x, i, j);
            const EdgeCurvatures kn = gauss_mean_mixed(pair.n, i, j);
            CHECK(std::abs(kx.K.value * kn.K.value - 1.0) < 1e-6);
            CHECK(std::abs(kx.H.value - kn.H.value / kn.K.value) < 1e-6);
        }
}

TEST_CASE("Weingarten relations Eq.-(7) across the s and lambda grids") {
    for (double s : {-1.0, -0.5, 0.0, 0.5, 1.0})
        for (double lambda : {0.1, -0.1, 0.01, -0.01}) {
            const FrameField F = frame_for(lambda);
            const LiftedPair pair = lift_surface(F, LWParams{s});
            const WeingartenReport rx = weingarten_residual(pair.x, WeingartenRelation::brlw(s));
            const WeingartenReport rn = weingarten_residual(pair.n, WeingartenRelation::bilw(s));
            CHECK(rx.max_residual < 1e-6);
            CHECK(rn.max_residual < 1e-6);
        }
}

TEST_CASE("surface cross ratio matches the Prop.-4.2 closed formula") {
    const double lambda = 0.1, s = 0.5;
    const FrameField F = frame_for(lambda);
    const HoloNet& net = F.holo;
    const LiftedPair pair = lift_surface(F, LWParams{s});
    const AmbientMetric mink = AmbientMetric::minkowski();
    for (int i = 0; i + 1 < pair.x.num_strips(); ++i)
        for (int j = 0; j < pair.x.num_samples(); j += 9) {
            const EdgeVectors e = x_edge(pair.x, i, j);
            const cplx cr = matrix_cross_ratio(e.d, e.D, e.d1, e.D, mink);
            const double tau = net.tau[(size_t)j], sigma = net.sigma[(size_t)i];
            const double p2 = std::norm(net.dg(i, j)), p2_1 = std::norm(net.dg(i + 1, j));
            const double q2 = std::norm(net.g(i + 1, j) - net.g(i, j));
            const double al = 1 + s * std::norm(net.g(i, j));
            const double al1 = 1 + s * std::norm(net.g(i + 1, j));
            const double num = ((1 - s) * p2 + lambda * tau * al * al) *
                               ((1 - s) * p2_1 + lambda * tau * al1 * al1);
            const double den = (1 - s) * q2 + lambda * sigma * al * al1;
            const double expected = sigma * (1 - lambda * sigma) / tau * num / (den * den);
            CHECK(std::abs(cr.imag()) < 1e-8 * std::abs(cr));
            CHECK(std::abs(cr.real() - expected) < 1e-6 * std::abs(expected));
        }
}

TEST_CASE("Gauss-map cross ratio identity") {
    const FrameField F = frame_for(0.1);
    const LiftedPair pair = lift_surface(F, LWParams{0.5});
    const AmbientMetric mink = AmbientMetric::minkowski();
    for (int i = 0; i + 1 < pair.x.num_strips(); ++i)
        for (int j = 0; j < pair.x.num_samples(); j += 9) {
            const EdgeVectors ex = x_edge(pair.x, i, j);
            const EdgeVectors en = n_edge(pair.x, i, j);
            const cplx crx = matrix_cross_ratio(ex.d, ex.D, ex.d1, ex.D, mink);
            const cplx crn = matrix_cross_ratio(en.d, en.D, en.d1, en.D, mink);
            const double k = fit_principal_smooth(pair.x, i, j).kappa.value;
            const double k1 = fit_principal_smooth(pair.x, i + 1, j).kappa.value;
            const double k01 = fit_principal_edge(pair.x, i, j).kappa.value;
            const cplx expected = crx * (k * k1 / (k01 * k01));
            CHECK(std::abs(crn - expected) < 1e-6 * std::abs(expected));
        }
}

TEST_CASE("parallel family in the spaceforms") {
    const double s = 1.0, lambda = 0.1;
    const FrameField F = frame_for(lambda);
    const LiftedPair pair = lift_surface(F, LWParams{s});
    const AmbientMetric mink = AmbientMetric::minkowski();

    const LiftedPair p0 = parallel_curved(pair, 0.0);
    CHECK((p0.x.x(1, 1) - pair.x.x(1, 1)).norm() == 0.0);

    const double theta = 0.7;
    const LiftedPair pt = parallel_curved(pair, theta);
    for (int j = 0; j < pt.x.num_samples(); j += 13) {
        CHECK(std::abs(inner(pt.x.x(1, j), pt.x.x(1, j), mink) + 1) < 1e-8);
        CHECK(std::abs(inner(pt.x.n(1, j), pt.x.n(1, j), mink) - 1) < 1e-8);
    }

    // s_theta = e^{-2 ln 2} = 1/4 and Eq. (8)/(9) residuals
    const double th2 = std::log(2.0);
    const LiftedPair p2 = parallel_curved(pair, th2);
    CHECK(p2.x.provenance.s == doctest::Approx(0.25));
    const WeingartenReport r8 = weingarten_residual(p2.x, WeingartenRelation::brlw(0.25));
    CHECK(r8.max_residual < 1e-6);
    const WeingartenReport r9 = weingarten_residual(p2.n, WeingartenRelation::bilw(0.25));
    CHECK(r9.max_residual < 1e-6);

    // composition closure
    const LiftedPair pa = parallel_curved(parallel_curved(pair, 0.3), 0.4);
    const LiftedPair pb = parallel_curved(pair, 0.7);
    double dmax = 0;
    for (int i = 0; i < pa.x.num_strips(); ++i)
        for (int j = 0; j < pa.x.num_samples(); ++j)
            dmax = std::max(dmax, (pa.x.x(i, j) - pb.x.x(i, j)).norm());
    CHECK(dmax < 1e-10);
}

TEST_CASE("Prop.-4.4 rational transformation of K and H") {
    const double s = 0.5, lambda = 0.1, theta = 0.6;
    const FrameField F = frame_for(lambda);
    const LiftedPair pair = lift_surface(F, LWParams{s});
    const LiftedPair pt = parallel_curved(pair, theta);
    const double ch2 = std::pow(std::cosh(theta), 2), sh2 = std::pow(std::sinh(theta), 2);
    const double s2t = std::sinh(2 * theta), c2t = std::cosh(2 * theta);
    for (int i = 0; i + 1 < pair.x.num_strips(); ++i)
        for (int j = 0; j < pair.x.num_samples(); j += 11) {
            const EdgeCurvatures base = gauss_mean_mixed(pair.x, i, j);
            const double K0 = base.K.value, H0 = base.H.value;
            const double den = ch2 - H0 * s2t + K0 * sh2;
            if (std::abs(den) < 1e-8) continue;  // flagged locus, not interpolated
            const EdgeCurvatures par = gauss_mean_mixed(pt.x, i, j);
            const double Kth = (K0 * ch2 - H0 * s2t + sh2) / den;
            const double Hth = (-(K0 + 1) * s2t + 2 * H0 * c2t) / (2 * den);
            CHECK(std::abs(par.K.value - Kth) < 1e-6 * std::max(1.0, std::abs(Kth)));
            CHECK(std::abs(par.H.value - Hth) < 1e-6 * std::max(1.0, std::abs(Hth)));
        }
}

TEST_CASE("reparametrized Weierstrass data reproduces the parallel surface") {
    const double s = 0.5, lambda = 0.1;
    const GridSpec grid{-1, 1, -0.45, 0.45, 0.01};
    const HoloNet net = make_linear_net(1, 1, grid);
    ODESettings solver;
    solver.step = grid.t_step;
    const FrameField F = integrate_frame(net, lambda, Mat2C::identity(), solver);
    const LiftedPair pair = lift_surface(F, LWParams{s});

    auto [net0, s0] = reparametrized_weierstrass_data(net, s, 0.0);
    CHECK(s0 == s);
    CHECK(std::abs(net0.g(1, 3) - net.g(1, 3)) == 0.0);

    const double theta = 1.0;
    auto [nett, st] = reparametrized_weierstrass_data(net, s, theta);
    CHECK(st == doctest::Approx(s * std::exp(-2.0)));
    // tau and sigma are unchanged by the reparametrization
    CHECK(nett.tau[0] == net.tau[0]);
    CHECK(nett.sigma[0] == net.sigma[0]);
    CHECK(validate_net(nett, 1e-10).pass);

    const FrameField Ft =
        integrate_frame(nett, lambda, reparametrized_frame_seed(Mat2C::identity(), theta), solver);
    const LiftedPair rebuilt = lift_surface(Ft, LWParams{st});
    const LiftedPair direct = parallel_curved(pair, theta);
    double dmax = 0;
    for (int i = 0; i < rebuilt.x.num_strips(); ++i)
        for (int j = 0; j < rebuilt.x.num_samples(); ++j)
            dmax = std::max(dmax, (rebuilt.x.x(i, j) - direct.x.x(i, j)).norm());
    CHECK(dmax < 1e-6);
}
