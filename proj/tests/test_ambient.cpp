#include <doctest.h>

#include <random>

#include "sdlw/ambient.hpp"

using namespace sdlw;

TEST_CASE("inner products match the signatures") {
    const AmbientMetric mink = AmbientMetric::minkowski();
    const AmbientMetric eucl = AmbientMetric::euclidean();
    CHECK(inner({1, 0, 0, 0}, {1, 0, 0, 0}, mink) == doctest::Approx(1.0));
    CHECK(inner({0, 0, 0, 1}, {0, 0, 0, 1}, mink) == doctest::Approx(-1.0));
    CHECK(inner({1, 2, 3, 4}, {4, 3, 2, 1}, eucl) == doctest::Approx(20.0));
    // R^{2,1} restriction carries the minus on the third slot
    CHECK(inner({0, 0, 1, 0}, {0, 0, 1, 0}, AmbientMetric::r21()) == doctest::Approx(-1.0));
}

TEST_CASE("embed: displayed matrix conventions") {
    const Mat2C a = embed({0, 0, 0, 1}, AmbientMetric::minkowski());
    CHECK(std::abs(a.a - 1.0) < 1e-15);
    CHECK(std::abs(a.b) < 1e-15);
    CHECK(std::abs(a.c) < 1e-15);
    CHECK(std::abs(a.d - 1.0) < 1e-15);

    const Mat2C b = embed({1, 0, 0, 0}, AmbientMetric::euclidean());
    CHECK(std::abs(b.a - 1.0) < 1e-15);
    CHECK(std::abs(b.d - 1.0) < 1e-15);
    CHECK(std::abs(b.b) + std::abs(b.c) < 1e-15);
}

TEST_CASE("embed/unembed round trip") {
    const Vec4 z{0.3, -1.2, 0.7, 2.0};
    for (const AmbientMetric& m : {AmbientMetric::minkowski(), AmbientMetric::euclidean(),
                                   AmbientMetric::r21()}) {
        const Vec4 back = unembed(embed(z, m), m);
        for (int i = 0; i < 4; ++i) CHECK(std::abs(back[i] - z[i]) < 1e-14);
    }
}

TEST_CASE("unembed rejects matrices outside the image") {
    Mat2C M = embed({1, 2, 3, 4}, AmbientMetric::minkowski());
    M.b += cplx(0, 1e-3);  // breaks Hermitian symmetry
    CHECK_THROWS_AS(unembed(M, AmbientMetric::minkowski()), NonRepresentableMatrix);

    Mat2C E = embed({1, 2, 3, 4}, AmbientMetric::euclidean());
    E.c = E.c + 0.01;
    CHECK_THROWS_AS(unembed(E, AmbientMetric::euclidean()), NonRepresentableMatrix);
}

TEST_CASE("determinant identity on random vectors") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int trial = 0; trial < 1000; ++trial) {
        const Vec4 z{u(rng), u(rng), u(rng), u(rng)};
        const double de = embed(z, AmbientMetric::euclidean()).det().real();
        CHECK(std::abs(de - inner(z, z, AmbientMetric::euclidean())) < 1e-12 * (1 + std::abs(de)));
        const double dm = embed(z, AmbientMetric::minkowski()).det().real();
        CHECK(std::abs(dm + inner(z, z, AmbientMetric::minkowski())) < 1e-12 * (1 + std::abs(dm)));
        const double dr = embed(z, AmbientMetric::r21()).det().real();
        CHECK(std::abs(dr + inner(z, z, AmbientMetric::r21())) < 1e-12 * (1 + std::abs(dr)));
    }
}

TEST_CASE("wedge_apply") {
    const AmbientMetric eucl = AmbientMetric::euclidean();
    const AmbientMetric mink = AmbientMetric::minkowski();
    const Vec4 e1{1, 0, 0, 0}, e2{0, 1, 0, 0}, e3{0, 0, 1, 0}, e0{0, 0, 0, 1};

    const Vec4 r = wedge_apply(e1, e2, e1, eucl);
    CHECK((r - e2).norm() < 1e-15);

    const Vec4 z = wedge_apply(e3, e3, e2, eucl);
    CHECK(z.norm() < 1e-15);

    // (e3.e0) e0 - (e0.e0) e3 = 0 + e3 in the Minkowski signature
    const Vec4 w = wedge_apply(e3, e0, e0, mink);
    CHECK((w - e3).norm() < 1e-15);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 100; ++trial) {
        const Vec4 a{u(rng), u(rng), u(rng), u(rng)};
        const Vec4 b{u(rng), u(rng), u(rng), u(rng)};
        const Vec4 c{u(rng), u(rng), u(rng), u(rng)};
        const Vec4 sum = wedge_apply(a, b, c, mink) + wedge_apply(b, a, c, mink);
        CHECK(sum.norm() == 0.0);  // antisymmetry is exact
    }
}

TEST_CASE("matrix_cross_ratio basics") {
    const AmbientMetric eucl = AmbientMetric::euclidean();
    const Vec4 e1{1, 0, 0, 0}, e2{0, 1, 0, 0};
    const cplx cr = matrix_cross_ratio(e1, e2, e1, e2, eucl);
    CHECK(std::abs(cr - cplx(-1, 0)) < 1e-14);

    CHECK_THROWS_AS(matrix_cross_ratio(e1, {0, 0, 0, 0}, e1, e2, eucl), SingularEdgeVector);
    // a product that is not scalar: p q^-1 r s^-1 with generic vectors
    CHECK_THROWS_AS(matrix_cross_ratio({1, 2, 3, 4}, e1, e2, {0, 1, 2, 0}, eucl), NotScalarMatrix);
}

TEST_CASE("cross ratio of the linear holomorphic family") {
    // g = a k + i b t: dg dg1/(Dg)^2 = -b^2/a^2, via the planar embedding
    auto planar = [](cplx z) { return Vec4{z.real(), z.imag(), 0, 0}; };
    for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}}) {
        const cplx dg(0, b), dg1(0, b), delta(a, 0);
        const cplx cr = matrix_cross_ratio(planar(dg), planar(delta), planar(dg1), planar(delta),
                                           AmbientMetric::euclidean());
        CHECK(std::abs(cr - cplx(-b * b / (a * a), 0)) < 1e-12);
    }
}

TEST_CASE("cross ratio is invariant under isometric conjugation") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1, 1);
    const AmbientMetric mink = AmbientMetric::minkowski();
    // conjugation M -> A M A^dagger preserves the Hermitian image
    const Mat2C A{cplx(1.1, 0.2), cplx(-0.3, 0.4), cplx(0.1, -0.5), cplx(0.9, 0.1)};
    auto iso = [&](const Vec4& z) { return unembed(A * embed(z, mink) * A.conj_transpose(), mink); };
    for (int trial = 0; trial < 50; ++trial) {
        // circular edge data in a random plane so the product is scalar
        const cplx g0{u(rng), u(rng)}, g1{cplx(2, 0) + cplx{u(rng), u(rng)}}, dg0{1.0 + u(rng), u(rng)};
        const cplx dg1 = (u(rng) - 1.5) * (g1 - g0) * (g1 - g0) / dg0;
        auto lift = [](cplx z) { return Vec4{z.real(), z.imag(), 0, 0}; };
        const Vec4 p = lift(dg0), q = lift(g1 - g0), r = lift(dg1);
        if (std::abs(embed(q, mink).det()) < 1e-6) continue;
        const cplx c0 = matrix_cross_ratio(p, q, r, q, mink);
        const cplx c1 = matrix_cross_ratio(iso(p), iso(q), iso(r), iso(q), mink);
        CHECK(std::abs(c0 - c1) < 1e-8 * (1 + std::abs(c0)));
    }
}
