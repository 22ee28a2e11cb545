#include "sdlw/ambient.hpp"

#include <algorithm>

namespace sdlw {

Vec4 wedge_apply(const Vec4& a, const Vec4& b, const Vec4& c, const AmbientMetric& m) {
    return b * inner(a, c, m) - a * inner(b, c, m);
}

Mat2C embed(const Vec4& z, const AmbientMetric& m) {
    if (m.signature == Signature::Euclidean4) {
        const cplx i(0, 1);
        return {z[0] + i * z[1], z[2] + i * z[3], -z[2] + i * z[3], z[0] - i * z[1]};
    }
    Vec4 w = z;
    if (m.tag == Submanifold::R21) w = {z[0], z[1], z[3], z[2]};
    const cplx i(0, 1);
    return {w[3] + w[2], w[0] - i * w[1], w[0] + i * w[1], w[3] - w[2]};
}

Vec4 unembed(const Mat2C& M, const AmbientMetric& m, double tol) {
    const double scale = std::max(M.norm(), 1e-300);
    if (m.signature == Signature::Euclidean4) {
        // requires d = conj(a), c = -conj(b)
        const double res = std::max(std::abs(M.d - std::conj(M.a)), std::abs(M.c + std::conj(M.b)));
        if (res > tol * scale)
            throw NonRepresentableMatrix("matrix outside the Euclidean embedding image");
        return {M.a.real(), M.a.imag(), M.b.real(), M.b.imag()};
    }
    const Mat2C H = M - M.conj_transpose();
    if (H.norm() > tol * scale)
        throw NonRepresentableMatrix("matrix not Hermitian within tolerance");
    const double z0 = 0.5 * (M.a.real() + M.d.real());
    const double z3 = 0.5 * (M.a.real() - M.d.real());
    const double z1 = M.c.real();
    const double z2 = M.c.imag();
    if (m.tag == Submanifold::R21) return {z1, z2, z0, z3};
    return {z1, z2, z3, z0};
}

cplx matrix_cross_ratio(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& s,
                        const AmbientMetric& m, double scalar_tol) {
    const Mat2C Q = embed(q, m), S = embed(s, m);
    const double qn = Q.norm(), sn = S.norm();
    if (std::abs(Q.det()) <= 1e-13 * std::max(qn * qn, 1e-300))
        throw SingularEdgeVector("second cross-ratio argument has singular embedding");
    if (std::abs(S.det()) <= 1e-13 * std::max(sn * sn, 1e-300))
        throw SingularEdgeVector("fourth cross-ratio argument has singular embedding");

    const Mat2C P = embed(p, m) * Q.inverse() * embed(r, m) * S.inverse();
    const cplx mu = P.trace() * 0.5;
    const Mat2C off = P - Mat2C::identity() * mu;
    if (off.norm() > scalar_tol * std::max(P.norm(), 1e-300))
        throw NotScalarMatrix("cross-ratio product is not a scalar multiple of the identity");
    return mu;
}

double submanifold_residual(const Vec4& z, const AmbientMetric& m) {
    const double zz = inner(z, z, m);
    switch (m.tag) {
        case Submanifold::R3:
        case Submanifold::R21:
            return std::abs(z[3]);
        case Submanifold::H3Plus:
        case Submanifold::H3Minus:
            return std::abs(zz + 1.0);
        case Submanifold::S21:
            return std::abs(zz - 1.0);
        case Submanifold::None:
            return 0.0;
    }
    return 0.0;
}

} // namespace sdlw
