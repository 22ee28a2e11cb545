#include <doctest.h>

#include <random>

#include "sdlw/curvature.hpp"
#include "sdlw/minmax.hpp"
#include "test_helpers.hpp"

using namespace sdlw;

namespace {

SemiDiscreteSurface linear_minimal() {
    const HoloNet net = make_linear_net(1, 1, {-2, 2, -0.45, 0.45, 0.025});
    ODESettings solver;
    solver.step = 0.025;
    return build_minmax(net, 1, {0, 0, 0, 0}, solver);
}

} // namespace

TEST_CASE("fitted kappa matches the closed form at g = 0") {
    const SemiDiscreteSurface S = linear_minimal();
    const int i = 2;                            // strip k = 0
    const int j = S.num_samples() / 2;          // t = -0.05... nearest to 0
    // evaluate at the exact vertex with g = i t, oracle kappa = -4/( -1 (1+t^2)^2 )
    const double t = S.grid.t(j);
    const double expected = 4.0 / std::pow(1.0 + t * t, 2);
    const PrincipalCurvature pc = fit_principal_smooth(S, i, j);
    REQUIRE_FALSE(pc.kappa.infinite);
    CHECK(pc.kappa.value == doctest::Approx(expected).epsilon(1e-6));
    CHECK(pc.fit_residual < 1e-8);
}

TEST_CASE("self-dual toy data has kappa = -1 exactly") {
    const Vec4 d{0.3, -0.7, 0.2, 0};
    const PrincipalCurvature pc = fit_principal(d, d);
    CHECK(pc.kappa.value == -1.0);
    CHECK(pc.fit_residual < 1e-15);
}

TEST_CASE("fit rejects non-parallel data") {
    const Vec4 dx{1, 0, 0, 0};
    const Vec4 dn{-2, 1e-3, 0, 0};
    CHECK_THROWS_AS(fit_principal(dx, dn), NotParallel);
}

TEST_CASE("fit flags infinite kappa") {
    const Vec4 dx{1e-14, 0, 0, 0};
    const Vec4 dn{3, 0, 0, 0};
    const PrincipalCurvature pc = fit_principal(dx, dn);
    CHECK(pc.kappa.infinite);
    CHECK(pc.kappa.sign == -1);
}

TEST_CASE("mixed area on the orthogonal frame") {
    // dx = dx1 = e1, Dx = e2: A(x,x) = e1 ^ e2, so A e1 = e2 and A e2 = -e1
    const EdgeVectors e{{1, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}};
    const Mat4 A = mixed_area(e, e, AmbientMetric::euclidean());
    const Vec4 r1 = A.apply({1, 0, 0, 0});
    const Vec4 r2 = A.apply({0, 1, 0, 0});
    CHECK((r1 - Vec4{0, 1, 0, 0}).norm() < 1e-15);
    CHECK((r2 - Vec4{-1, 0, 0, 0}).norm() < 1e-15);
}

TEST_CASE("mixed area is symmetric and bilinear on parallel data") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    const AmbientMetric m = AmbientMetric::euclidean();
    for (int trial = 0; trial < 50; ++trial) {
        const EdgeVectors x{{u(rng), u(rng), u(rng), u(rng)},
                            {u(rng), u(rng), u(rng), u(rng)},
                            {u(rng), u(rng), u(rng), u(rng)}};
        // y parallel to x componentwise with random scalars
        const double a = u(rng), b = u(rng), c = u(rng);
        const EdgeVectors y{x.d * a, x.d1 * b, x.D * c};
        const Mat4 Axy = mixed_area(x, y, m);
        const Mat4 Ayx = mixed_area(y, x, m);
        double diff = 0;
        for (int p = 0; p < 16; ++p)
            diff = std::max(diff, std::abs(Axy.m[(size_t)p] - Ayx.m[(size_t)p]));
        CHECK(diff < 1e-13);

        const EdgeVectors y2{y.d * 2.0, y.d1 * 2.0, y.D * 2.0};
        const Mat4 A2 = mixed_area(x, y2, m);
        double lin = 0;
        for (int p = 0; p < 16; ++p)
            lin = std::max(lin, std::abs(A2.m[(size_t)p] - 2.0 * Axy.m[(size_t)p]));
        CHECK(lin < 1e-13);
    }
}

TEST_CASE("mixed area antisymmetry under the metric pairing") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-2, 2);
    const AmbientMetric m = AmbientMetric::minkowski();
    const EdgeVectors x{{u(rng), u(rng), u(rng), u(rng)},
                        {u(rng), u(rng), u(rng), u(rng)},
                        {u(rng), u(rng), u(rng), u(rng)}};
    const Mat4 A = mixed_area(x, x, m);
    for (int trial = 0; trial < 20; ++trial) {
        const Vec4 c{u(rng), u(rng), u(rng), u(rng)};
        const Vec4 d{u(rng), u(rng), u(rng), u(rng)};
        CHECK(std::abs(inner(A.apply(c), d, m) + inner(A.apply(d), c, m)) < 1e-12);
    }
}

TEST_CASE("minimal surface edges have H = 0") {
    const SemiDiscreteSurface S = linear_minimal();
    for (int i = 0; i + 1 < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j) {
            const EdgeCurvatures ec = gauss_mean_mixed(S, i, j);
            CHECK(std::abs(ec.H.value) < 1e-6);
        }
}

TEST_CASE("identical arguments give K = 1, H = -1") {
    // n = x: A(n,n) = A(x,x) and A(x,n) = A(x,x)
    SemiDiscreteSurface S = linear_minimal();
    for (int i = 0; i < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j) {
            S.n(i, j) = S.x(i, j);
            S.dn(i, j) = S.dx(i, j);
        }
    const EdgeCurvatures ec = gauss_mean_mixed(S, 1, 3);
    CHECK(ec.K.value == 1.0);
    CHECK(ec.H.value == -1.0);
}

TEST_CASE("degenerate and non-proportional mixed areas are rejected") {
    using sdlw::testing::SyntheticSurface;
    // dx, dx1 and Dx all parallel: A(x,x) vanishes
    SyntheticSurface degen(2);
    degen.set(0, {0, 0, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {-1, 0, 0, 0});
    degen.set(1, {1, 0, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {-1, 0, 0, 0});
    CHECK_THROWS_AS(gauss_mean_mixed(degen.S, 0, 0), DegenerateMixedArea);

    // non-conjugate edge (dx1 out of plane) with unequal kappa scalings:
    // A(n,n) is no multiple of A(x,x)
    SyntheticSurface np(2);
    np.set(0, {0, 0, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {-1, 0, 0, 0});
    np.set(1, {0, 1, 0, 0}, {0, -1, 0, 1}, {0, 0, 1, 0}, {0, 0, -2, 0});
    CHECK_THROWS_AS(gauss_mean_mixed(np.S, 0, 0), NotProportional);
}

TEST_CASE("closed-form K and H from Prop.-3.1 arithmetic") {
    const EdgeCurvatures ec = gauss_mean_closed(CurvatureValue::finite(1),
                                                CurvatureValue::finite(2),
                                                CurvatureValue::finite(3));
    CHECK(ec.K.value == doctest::Approx(5.0));
    CHECK(ec.H.value == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("umbilic degeneracy") {
    CHECK_THROWS_AS(gauss_mean_closed(CurvatureValue::finite(2), CurvatureValue::finite(2),
                                      CurvatureValue::finite(2)),
                    UmbilicDegeneracy);
}

TEST_CASE("dual-path curvature agreement on a built surface") {
    const SemiDiscreteSurface S = linear_minimal();
    int edges = 0;
    for (int i = 0; i + 1 < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j) {
            const EdgeCurvatures mixed = gauss_mean_mixed(S, i, j);
            const EdgeCurvatures closed =
                gauss_mean_closed(fit_principal_smooth(S, i, j).kappa,
                                  fit_principal_smooth(S, i + 1, j).kappa,
                                  fit_principal_edge(S, i, j).kappa);
            CHECK(std::abs(mixed.K.value - closed.K.value) < 1e-8);
            CHECK(std::abs(mixed.H.value - closed.H.value) < 1e-8);
            ++edges;
        }
    CHECK(edges >= 100);
}

TEST_CASE("infinite-kappa propagation through the closed forms") {
    const EdgeCurvatures a = gauss_mean_closed(CurvatureValue::finite(1), CurvatureValue::finite(2),
                                               CurvatureValue::inf(1));
    CHECK(a.K.infinite);
    CHECK(a.H.infinite);
    const EdgeCurvatures b = gauss_mean_closed(CurvatureValue::inf(1), CurvatureValue::finite(2),
                                               CurvatureValue::finite(3));
    CHECK_FALSE(b.K.infinite);  // finite limit kappa01 (2 kappa1 - kappa01)
    CHECK(b.K.value == doctest::Approx(3.0 * (2 * 2 - 3)));
    CHECK(b.H.value == doctest::Approx(2.0));
}

TEST_CASE("weingarten residuals distinguish families") {
    const SemiDiscreteSurface S = linear_minimal();
    const WeingartenReport ok = weingarten_residual(S, WeingartenRelation::minmax());
    CHECK(ok.evaluated > 0);
    CHECK(ok.max_residual < 1e-6);

    // parallel minimal surface at theta = 1: H_theta + theta K_theta = 0
    const SemiDiscreteSurface P = parallel_flat(S, 1.0);
    const WeingartenReport pr = weingarten_residual(P, WeingartenRelation::parallel_flat(1.0));
    CHECK(pr.evaluated > 0);
    CHECK(pr.max_residual < 1e-6);

    // negative control: the wrong relation has a large residual
    const WeingartenReport bad = weingarten_residual(P, WeingartenRelation::minmax());
    CHECK(bad.max_residual > 1e-2);
}
