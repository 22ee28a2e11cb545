#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "sdlw/errors.hpp"

namespace sdlw {

using cplx = std::complex<double>;

/// Real 4-vector in the model space V^4 (either R^4 or R^{3,1}).
struct Vec4 {
    std::array<double, 4> v{0, 0, 0, 0};

    Vec4() = default;
    Vec4(double a, double b, double c, double d) : v{a, b, c, d} {}

    double& operator[](int i) { return v[(size_t)i]; }
    double operator[](int i) const { return v[(size_t)i]; }

    Vec4 operator+(const Vec4& o) const { return {v[0] + o.v[0], v[1] + o.v[1], v[2] + o.v[2], v[3] + o.v[3]}; }
    Vec4 operator-(const Vec4& o) const { return {v[0] - o.v[0], v[1] - o.v[1], v[2] - o.v[2], v[3] - o.v[3]}; }
    Vec4 operator*(double s) const { return {v[0] * s, v[1] * s, v[2] * s, v[3] * s}; }
    Vec4 operator-() const { return {-v[0], -v[1], -v[2], -v[3]}; }
    Vec4& operator+=(const Vec4& o) {
        for (int i = 0; i < 4; ++i) v[(size_t)i] += o.v[(size_t)i];
        return *this;
    }

    /// Euclidean length of the coordinate vector (used for scale checks, not geometry).
    double norm() const { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3]); }
};

inline Vec4 operator*(double s, const Vec4& a) { return a * s; }

enum class Signature { Euclidean4, Minkowski31 };

enum class Submanifold { None, R3, R21, H3Plus, H3Minus, S21 };

/// Signature metric on V^4 together with the submanifold the data lives on.
///
/// R^{2,1} is stored in slots 1..3 with restricted metric (+,+,-) and a zero
/// fourth component; its 2x2 matrix model swaps slots 3 and 4 before applying
/// the R^{3,1} embedding so that det(embed(z)) = -(z.z) still holds.
struct AmbientMetric {
    Signature signature = Signature::Euclidean4;
    Submanifold tag = Submanifold::None;

    static AmbientMetric euclidean() { return {Signature::Euclidean4, Submanifold::None}; }
    static AmbientMetric r3() { return {Signature::Euclidean4, Submanifold::R3}; }
    static AmbientMetric minkowski() { return {Signature::Minkowski31, Submanifold::None}; }
    static AmbientMetric r21() { return {Signature::Minkowski31, Submanifold::R21}; }
    static AmbientMetric h3(bool plus = true) {
        return {Signature::Minkowski31, plus ? Submanifold::H3Plus : Submanifold::H3Minus};
    }
    static AmbientMetric s21() { return {Signature::Minkowski31, Submanifold::S21}; }

    bool euclidean_signature() const { return signature == Signature::Euclidean4; }

    /// Metric signs per component.
    std::array<double, 4> diag() const {
        if (signature == Signature::Euclidean4) return {1, 1, 1, 1};
        if (tag == Submanifold::R21) return {1, 1, -1, 1};
        return {1, 1, 1, -1};
    }

    /// True when tangent planes of surfaces in this ambient can fail to be spacelike.
    bool lorentzian() const { return signature == Signature::Minkowski31; }
};

inline double inner(const Vec4& u, const Vec4& w, const AmbientMetric& m) {
    const auto d = m.diag();
    return u[0] * w[0] * d[0] + u[1] * w[1] * d[1] + u[2] * w[2] * d[2] + u[3] * w[3] * d[3];
}

/// (a ^ b) c = (a.c) b - (b.c) a
Vec4 wedge_apply(const Vec4& a, const Vec4& b, const Vec4& c, const AmbientMetric& m);

/// 2x2 complex matrix, row-major [[a, b], [c, d]].
struct Mat2C {
    cplx a{0}, b{0}, c{0}, d{0};

    static Mat2C identity() { return {1, 0, 0, 1}; }

    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }

    Mat2C operator*(const Mat2C& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    Mat2C operator+(const Mat2C& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2C operator-(const Mat2C& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2C operator*(cplx s) const { return {a * s, b * s, c * s, d * s}; }

    Mat2C conj_transpose() const {
        return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
    }

    /// Inverse; caller is responsible for checking det.
    Mat2C inverse() const {
        const cplx dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }

    double norm() const {
        return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    }
};

inline Mat2C operator*(cplx s, const Mat2C& m) { return m * s; }

/// Matrix model of V^4 from the ambient identification of points with 2x2 matrices.
Mat2C embed(const Vec4& z, const AmbientMetric& m);

/// Inverse of embed; throws NonRepresentableMatrix when M is outside the image
/// of embed beyond `tol` (relative to the matrix norm).
Vec4 unembed(const Mat2C& M, const AmbientMetric& m, double tol = 1e-10);

/// Tangent cross ratio p q^{-1} r s^{-1} in the matrix model. Returns the
/// scalar when the product is a scalar multiple of the identity (off-scalar
/// residual below `scalar_tol`, relative); throws NotScalarMatrix otherwise,
/// and SingularEdgeVector when q or s is not invertible.
cplx matrix_cross_ratio(const Vec4& p, const Vec4& q, const Vec4& r, const Vec4& s,
                        const AmbientMetric& m, double scalar_tol = 1e-8);

/// Residual of the submanifold constraint (z.z - target, or the unused
/// component for the flat cases). Zero for tag None.
double submanifold_residual(const Vec4& z, const AmbientMetric& m);

} // namespace sdlw
