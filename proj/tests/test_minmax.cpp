#include <doctest.h>

#include <cmath>

#include "sdlw/minmax.hpp"
#include "test_helpers.hpp"

using namespace sdlw;

namespace {

const GridSpec kGrid{-2, 2, -0.45, 0.45, 0.05};

SemiDiscreteSurface build(int eps, Vec4 base = {0, 0, 0, 0}) {
    const HoloNet net = make_linear_net(1, 1, kGrid);
    ODESettings solver;
    solver.step = kGrid.t_step;
    return build_minmax(net, eps, base, solver);
}

} // namespace

TEST_CASE("normal field values and norms") {
    const Vec4 n0p = normal_minmax({0, 0}, 1);
    CHECK((n0p - Vec4{0, 0, 1, 0}).norm() < 1e-15);
    const Vec4 n0m = normal_minmax({0, 0}, -1);
    CHECK((n0m - Vec4{0, 0, 1, 0}).norm() < 1e-15);
    CHECK(inner(n0m, n0m, AmbientMetric::r21()) == doctest::Approx(-1.0));

    const Vec4 n1 = normal_minmax({1, 0}, 1);
    CHECK((n1 - Vec4{1, 0, 0, 0}).norm() < 1e-15);

    CHECK_THROWS_AS(normal_minmax({1, 0}, -1), DenominatorBlowup);
}

TEST_CASE("normal norms on random points") {
    for (double re : {-0.7, 0.0, 1.3})
        for (double im : {-0.2, 0.5}) {
            const cplx g{re, im};
            const Vec4 np = normal_minmax(g, 1);
            CHECK(inner(np, np, AmbientMetric::r3()) == doctest::Approx(1.0).epsilon(1e-12));
            if (std::abs(1.0 - std::norm(g)) > 1e-6) {
                const Vec4 nm = normal_minmax(g, -1);
                CHECK(inner(nm, nm, AmbientMetric::r21()) == doctest::Approx(-1.0).epsilon(1e-9));
            }
        }
}

TEST_CASE("built surfaces satisfy the Legendre and compatibility conditions") {
    const HoloNet net = make_linear_net(1, 1, kGrid);
    for (int eps : {1, -1}) {
        const SemiDiscreteSurface S = build(eps);
        double compat = 0, legendre = 0, norm_res = 0;
        for (int i = 0; i < S.num_strips(); ++i)
            for (int j = 0; j < S.num_samples(); ++j) {
                if (!S.vertex_valid(i, j)) continue;
                legendre = std::max(legendre,
                                    std::abs(inner(S.n(i, j), S.dx(i, j), S.ambient)));
                norm_res = std::max(norm_res, std::abs(inner(S.n(i, j), S.n(i, j), S.ambient) - eps));
                if (i + 1 < S.num_strips()) {
                    const Vec4 dDx = minmax_ddelta_x(net.g(i, j), net.g(i + 1, j), net.dg(i, j),
                                                     net.dg(i + 1, j), net.sigma[(size_t)i], eps);
                    const Vec4 Ddx = S.dx(i + 1, j) - S.dx(i, j);
                    compat = std::max(compat, (dDx - Ddx).norm());
                }
            }
        CHECK(legendre < 1e-8);
        CHECK(norm_res < 1e-9);
        CHECK(compat < 1e-6);
    }
}

TEST_CASE("x really moves by Delta x across strips") {
    const HoloNet net = make_linear_net(1, 1, kGrid);
    const SemiDiscreteSurface S = build(1);
    for (int i = 0; i + 1 < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j) {
            const Vec4 d = S.x(i + 1, j) - S.x(i, j) -
                           minmax_delta_x(net.g(i, j), net.g(i + 1, j), net.sigma[(size_t)i], 1);
            CHECK(d.norm() < 1e-14);
        }
}

TEST_CASE("strip-wise integration agrees with the Delta-x path") {
    // oracle: integrate dx along t on strip i and compare with the built surface
    const HoloNet net = make_linear_net(1, 1, kGrid);
    const SemiDiscreteSurface S = build(1);
    const int nt = S.num_samples();
    for (int i = 1; i < S.num_strips(); ++i) {
        Vec4 x = S.x(i, 0);
        double worst = 0;
        for (int j = 0; j + 1 < nt; ++j) {
            const double t0 = kGrid.t(j), h = kGrid.t_step;
            auto f = [&](double t) {
                return minmax_dx(net.g_at(i, t), net.dg_at(i, t), net.tau_at(t), 1);
            };
            x += (f(t0) + f(t0 + h / 2) * 4.0 + f(t0 + h)) * (h / 6.0);
            worst = std::max(worst, (x - S.x(i, j + 1)).norm());
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("translation equivariance of the base point") {
    const Vec4 p{0.4, -1.0, 2.0, 0};
    const SemiDiscreteSurface S0 = build(1);
    const SemiDiscreteSurface Sp = build(1, p);
    for (int i = 0; i < S0.num_strips(); ++i)
        for (int j = 0; j < S0.num_samples(); ++j)
            CHECK((Sp.x(i, j) - S0.x(i, j) - p).norm() < 1e-14);  // ulp-level only
}

TEST_CASE("maximal surface is returned in pieces at |g| = 1 crossings") {
    const GridSpec grid{-2, 2, -1.45, 1.45, 0.1};
    const HoloNet net = make_linear_net(1, 1, grid);
    ODESettings solver;
    solver.step = grid.t_step;
    const SemiDiscreteSurface S = build_minmax(net, -1, {0, 0, 0, 0}, solver);
    // strip k=0 crosses |g|=1 at t = -1 and t = 1
    const auto& cr = S.crossings[2];
    REQUIRE(cr.size() == 2);
    CHECK(cr[0] == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(cr[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(S.pieces(2).size() == 3);
    // all samples stay valid (no sample sits on the circle for this grid)
    for (int j = 0; j < S.num_samples(); ++j) CHECK(S.vertex_valid(2, j));
}

TEST_CASE("closed-form principal curvatures at frozen values") {
    const GridSpec grid{-2, 2, -0.5, 0.5, 0.25};  // contains t = 0 exactly
    const HoloNet net = make_linear_net(1, 1, grid);
    const PrincipalField pf = principal_minmax_closed(net, 1);
    const int i0 = 2, j0 = 2;  // k = 0, t = 0
    CHECK(pf.kappa(i0, j0).value == doctest::Approx(4.0));
    CHECK(pf.kappa01(i0, j0).value == doctest::Approx(-2.0));

    // maximal case: |g| = 1 at k = 1, t = 0 flags infinite curvature
    const PrincipalField pm = principal_minmax_closed(net, -1);
    CHECK(pm.kappa(3, j0).infinite);
}

TEST_CASE("closed-form kappa matches the fitted kappa everywhere") {
    const HoloNet net = make_linear_net(1, 1, kGrid);
    for (int eps : {1, -1}) {
        const SemiDiscreteSurface S = build(eps);
        const PrincipalField pf = principal_minmax_closed(net, eps);
        for (int i = 0; i < S.num_strips(); ++i)
            for (int j = 0; j < S.num_samples(); ++j) {
                if (!S.vertex_valid(i, j)) continue;
                const PrincipalCurvature fit = fit_principal_smooth(S, i, j);
                CHECK(std::abs(fit.kappa.value - pf.kappa(i, j).value) <
                      1e-6 * std::abs(pf.kappa(i, j).value));
                if (i + 1 < S.num_strips() && S.edge_valid(i, j)) {
                    const PrincipalCurvature fe = fit_principal_edge(S, i, j);
                    CHECK(std::abs(fe.kappa.value - pf.kappa01(i, j).value) <
                          1e-6 * std::abs(pf.kappa01(i, j).value));
                }
            }
    }
}

TEST_CASE("circularity of built surfaces") {
    // a = 2 keeps the maximal surface's edge vectors away from the lightlike
    // locus, where the matrix cross ratio is undefined by construction
    for (int eps : {1, -1}) {
        const HoloNet net = make_linear_net(eps == 1 ? 1 : 2, 1, kGrid);
        ODESettings solver;
        solver.step = kGrid.t_step;
        const SemiDiscreteSurface S = build_minmax(net, eps, {0, 0, 0, 0}, solver);
        int checked = 0;
        for (int i = 0; i + 1 < S.num_strips(); ++i)
            for (int j = 0; j < S.num_samples(); j += 3) {
                const EdgeVectors e = x_edge(S, i, j);
                cplx cr;
                try {
                    cr = matrix_cross_ratio(e.d, e.D, e.d1, e.D, S.ambient);
                } catch (const SingularEdgeVector&) {
                    continue;
                }
                CHECK(std::abs(cr.imag()) < 1e-8 * std::abs(cr));
                CHECK(cr.real() < 0);
                ++checked;
            }
        CHECK(checked > 20);
    }
}

TEST_CASE("parallel surfaces of minimal surfaces") {
    const SemiDiscreteSurface S = build(1);

    const SemiDiscreteSurface P0 = parallel_flat(S, 0.0);
    for (int i = 0; i < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j)
            CHECK((P0.x(i, j) - S.x(i, j)).norm() == 0.0);

    // kappa_theta (1 - theta kappa) = kappa
    const double theta = 0.37;
    const SemiDiscreteSurface P = parallel_flat(S, theta);
    for (int i = 0; i < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); j += 2) {
            const double k = fit_principal_smooth(S, i, j).kappa.value;
            const PrincipalCurvature kt = fit_principal_smooth(P, i, j);
            if (kt.kappa.infinite) continue;
            CHECK(std::abs(kt.kappa.value * (1 - theta * k) - k) < 1e-8 * (1 + std::abs(k)));
        }

    // H_theta / K_theta = -theta for theta = 2
    const SemiDiscreteSurface P2 = parallel_flat(S, 2.0);
    for (int i = 0; i + 1 < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); j += 2) {
            const EdgeCurvatures ec = gauss_mean_mixed(P2, i, j);
            if (ec.K.infinite || std::abs(ec.K.value) < 1e-12) continue;
            CHECK(std::abs(ec.H.value / ec.K.value + 2.0) < 1e-6);
        }

    // composition
    const SemiDiscreteSurface Pa = parallel_flat(parallel_flat(S, 0.4), 0.6);
    const SemiDiscreteSurface Pb = parallel_flat(S, 1.0);
    for (int i = 0; i < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j)
            CHECK((Pa.x(i, j) - Pb.x(i, j)).norm() < 1e-12);
}

TEST_CASE("parallel surface hits the focal point at theta = 1/kappa") {
    // linear net at g=0 has kappa = 4; theta = 1/4 blows the smooth direction up
    const GridSpec grid{-1, 1, -0.5, 0.5, 0.25};
    const HoloNet net = make_linear_net(1, 1, grid);
    ODESettings solver;
    solver.step = grid.t_step;
    const SemiDiscreteSurface S = build_minmax(net, 1, {0, 0, 0, 0}, solver);
    const SemiDiscreteSurface P = parallel_flat(S, 0.25);
    const PrincipalCurvature kt = fit_principal_smooth(P, 1, 2);  // k=0, t=0
    CHECK(kt.kappa.infinite);
}
