#include "sdlw/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace sdlw {

Mat4 Mat4::operator+(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[(size_t)i] = m[(size_t)i] + o.m[(size_t)i];
    return r;
}

Mat4 Mat4::operator*(double s) const {
    Mat4 r;
    for (int i = 0; i < 16; ++i) r.m[(size_t)i] = m[(size_t)i] * s;
    return r;
}

Vec4 Mat4::apply(const Vec4& c) const {
    Vec4 out;
    for (int r = 0; r < 4; ++r) {
        double acc = 0;
        for (int k = 0; k < 4; ++k) acc += (*this)(r, k) * c[k];
        out[r] = acc;
    }
    return out;
}

double Mat4::max_abs() const {
    double mx = 0;
    for (double e : m) mx = std::max(mx, std::abs(e));
    return mx;
}

Mat4 wedge_operator(const Vec4& a, const Vec4& b, const AmbientMetric& met) {
    const auto d = met.diag();
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            r(i, j) = b[i] * a[j] * d[(size_t)j] - a[i] * b[j] * d[(size_t)j];
    return r;
}

EdgeVectors x_edge(const SemiDiscreteSurface& S, int i, int j) {
    return {S.dx(i, j), S.dx(i + 1, j), S.x(i + 1, j) - S.x(i, j)};
}

EdgeVectors n_edge(const SemiDiscreteSurface& S, int i, int j) {
    return {S.dn(i, j), S.dn(i + 1, j), S.n(i + 1, j) - S.n(i, j)};
}

namespace {

// sine of the angle between a and b (Euclidean), 0 when either vanishes
double parallel_residual(const Vec4& a, const Vec4& b) {
    const double na = a.norm(), nb = b.norm();
    if (na == 0 || nb == 0) return 0;
    double dot = 0;
    for (int i = 0; i < 4; ++i) dot += a[i] * b[i];
    const double c = dot / (na * nb);
    return std::sqrt(std::max(0.0, 1.0 - c * c));
}

} // namespace

Mat4 mixed_area(const EdgeVectors& xa, const EdgeVectors& ya, const AmbientMetric& m,
                double parallel_tol) {
    if (parallel_residual(xa.d, ya.d) > parallel_tol || parallel_residual(xa.D, ya.D) > parallel_tol)
        throw NotParallel("mixed area requires dx || dy and Dx || Dy");
    const Vec4 sx = xa.d + xa.d1;
    const Vec4 sy = ya.d + ya.d1;
    return (wedge_operator(sx, ya.D, m) + wedge_operator(sy, xa.D, m)) * 0.25;
}

PrincipalCurvature fit_principal(const Vec4& dx, const Vec4& dn, double parallel_tol,
                                 double inf_threshold) {
    double xx = 0, dot = 0;
    for (int i = 0; i < 4; ++i) {
        xx += dx[i] * dx[i];
        dot += dn[i] * dx[i];
    }
    const double nx = std::sqrt(xx), nn = dn.norm();
    if (nx < inf_threshold * nn) return {CurvatureValue::inf(dot > 0 ? -1 : 1), 0};
    const double res = parallel_residual(dx, dn);
    if (res > parallel_tol)
        throw NotParallel("derivative vectors are not parallel (not a curvature-line edge)");
    const double kappa = -dot / xx;
    Vec4 r = dn + dx * kappa;
    return {CurvatureValue::finite(kappa), nx > 0 ? r.norm() / nx : 0.0};
}

PrincipalCurvature fit_principal_smooth(const SemiDiscreteSurface& S, int i, int j,
                                        double inf_threshold) {
    return fit_principal(S.dx(i, j), S.dn(i, j), 1e-7, inf_threshold);
}

PrincipalCurvature fit_principal_edge(const SemiDiscreteSurface& S, int i, int j,
                                      double inf_threshold) {
    return fit_principal(S.x(i + 1, j) - S.x(i, j), S.n(i + 1, j) - S.n(i, j), 1e-7, inf_threshold);
}

namespace {

// ratio r with B = r A, pivoting on the largest entry of A
std::pair<double, double> proportionality(const Mat4& B, const Mat4& A) {
    double piv = 0;
    int pr = 0, pc = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (std::abs(A(r, c)) > piv) {
                piv = std::abs(A(r, c));
                pr = r;
                pc = c;
            }
    const double ratio = B(pr, pc) / A(pr, pc);
    double res = 0;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) res = std::max(res, std::abs(B(r, c) - ratio * A(r, c)));
    return {ratio, res};
}

} // namespace

EdgeCurvatures gauss_mean_mixed(const SemiDiscreteSurface& S, int i, int j) {
    const EdgeVectors ex = x_edge(S, i, j);
    const EdgeVectors en = n_edge(S, i, j);
    const Mat4 Axx = mixed_area(ex, ex, S.ambient);
    const double scale = Axx.max_abs();
    if (scale < 1e-10) throw DegenerateMixedArea("A(x,x) vanishes on this edge");
    const Mat4 Ann = mixed_area(en, en, S.ambient);
    const Mat4 Axn = mixed_area(ex, en, S.ambient);
    auto [K, resK] = proportionality(Ann, Axx);
    auto [mH, resH] = proportionality(Axn, Axx);
    const double res = std::max(resK, resH);
    if (res > 1e-8 * std::max(scale, Ann.max_abs()))
        throw NotProportional("A(n,n), A(x,n) are not multiples of A(x,x)");
    EdgeCurvatures out;
    out.K = CurvatureValue::finite(K);
    out.H = CurvatureValue::finite(-mH);
    out.source = CurvatureSource::MixedArea;
    out.residual = res;
    return out;
}

EdgeCurvatures gauss_mean_closed(const CurvatureValue& kappa, const CurvatureValue& kappa1,
                                 const CurvatureValue& kappa01) {
    EdgeCurvatures out;
    out.source = CurvatureSource::ClosedForm;

    const int ninf = (kappa.infinite ? 1 : 0) + (kappa1.infinite ? 1 : 0) + (kappa01.infinite ? 1 : 0);
    if (ninf > 0) {
        // limits of the Prop.-3.1 rational forms as one input blows up
        if (ninf == 1 && kappa01.infinite) {
            const double k = kappa.value, k1 = kappa1.value;
            out.K = CurvatureValue::inf(kappa01.sign * ((k + k1) >= 0 ? 1 : -1));
            out.H = CurvatureValue::inf(kappa01.sign);
            return out;
        }
        if (ninf == 1 && (kappa.infinite || kappa1.infinite)) {
            const double kf = kappa.infinite ? kappa1.value : kappa.value;
            const double k01 = kappa01.value;
            out.K = CurvatureValue::finite(k01 * (2 * kf - k01));
            out.H = CurvatureValue::finite(kf);
            return out;
        }
        out.K = CurvatureValue::inf(1);
        out.H = CurvatureValue::inf(1);
        return out;
    }

    double k = kappa.value, k1 = kappa1.value, k01 = kappa01.value;
    const double mx = std::max({std::abs(k), std::abs(k1), std::abs(k01)});
    double scaleK = 1, scaleH = 1;
    if (mx > 1e8) {  // projective normalization against overflow
        k /= mx;
        k1 /= mx;
        k01 /= mx;
        scaleK = mx * mx;
        scaleH = mx;
    }
    const double den = k1 + k - 2 * k01;
    if (std::abs(den) < 1e-12 * std::max({std::abs(k), std::abs(k1), std::abs(k01), 1e-30}))
        throw UmbilicDegeneracy("kappa1 + kappa - 2 kappa01 vanishes");
    out.K = CurvatureValue::finite(scaleK * k01 * (2 * k * k1 - k * k01 - k1 * k01) / den);
    out.H = CurvatureValue::finite(scaleH * (k * k1 - k01 * k01) / den);
    return out;
}

double relation_residual(const WeingartenRelation& rel, double K, double H) {
    switch (rel.kind) {
        case WeingartenRelation::Kind::MinMax:
            return H;
        case WeingartenRelation::Kind::BrLW:
        case WeingartenRelation::Kind::ParallelCurved:
            return 2 * rel.param * (H - 1) + (1 - rel.param) * (K - 1);
        case WeingartenRelation::Kind::BiLW:
            return 2 * rel.param * (H - 1) - (1 + rel.param) * (K - 1);
        case WeingartenRelation::Kind::ParallelFlat:
            return H + rel.param * K;
    }
    return 0;
}

WeingartenReport weingarten_residual(const SemiDiscreteSurface& S, const WeingartenRelation& rel) {
    WeingartenReport rep;
    for (int i = 0; i + 1 < S.num_strips(); ++i) {
        for (int j = 0; j < S.num_samples(); ++j) {
            if (!S.edge_valid(i, j)) {
                ++rep.skipped;
                continue;
            }
            EdgeCurvatures ec;
            try {
                ec = gauss_mean_mixed(S, i, j);
            } catch (const Error&) {
                ++rep.skipped;
                continue;
            }
            if (ec.K.infinite || ec.H.infinite) {
                ++rep.skipped;
                continue;
            }
            const double r = std::abs(relation_residual(rel, ec.K.value, ec.H.value));
            ++rep.evaluated;
            if (r > rep.max_residual) {
                rep.max_residual = r;
                rep.worst_i = i;
                rep.worst_j = j;
            }
        }
    }
    return rep;
}

} // namespace sdlw
