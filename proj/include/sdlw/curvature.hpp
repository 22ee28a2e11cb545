#pragma once

#include <array>

#include "sdlw/surface.hpp"

namespace sdlw {

/// Real value or a signed infinite flag. Infinities are data here (Def-5.1
/// style predicates consume them), never IEEE infinities inside formulas.
struct CurvatureValue {
    double value = 0;
    bool infinite = false;
    int sign = 0;  // sign of the approach when infinite

    static CurvatureValue finite(double v) { return {v, false, 0}; }
    static CurvatureValue inf(int s) { return {0, true, s >= 0 ? 1 : -1}; }
};

struct PrincipalCurvature {
    CurvatureValue kappa;
    double fit_residual = 0;
};

/// Mixed area element on an edge, stored as the 4x4 operator acting on V^4.
struct Mat4 {
    std::array<double, 16> m{};

    double& operator()(int r, int c) { return m[(size_t)(4 * r + c)]; }
    double operator()(int r, int c) const { return m[(size_t)(4 * r + c)]; }

    Mat4 operator+(const Mat4& o) const;
    Mat4 operator*(double s) const;
    Vec4 apply(const Vec4& c) const;
    double max_abs() const;
};

/// (a ^ b) as an operator: c -> (a.c) b - (b.c) a.
Mat4 wedge_operator(const Vec4& a, const Vec4& b, const AmbientMetric& m);

/// Edge data of one conjugate net: derivatives at both endpoints and the difference.
struct EdgeVectors {
    Vec4 d, d1, D;
};

EdgeVectors x_edge(const SemiDiscreteSurface& S, int i, int j);
EdgeVectors n_edge(const SemiDiscreteSurface& S, int i, int j);

/// A(x,y) = 1/4 ((dx + dx1) ^ Dy + (dy + dy1) ^ Dx); requires dx || dy and
/// Dx || Dy within `parallel_tol` radians (throws NotParallel).
Mat4 mixed_area(const EdgeVectors& xa, const EdgeVectors& ya, const AmbientMetric& m,
                double parallel_tol = 1e-7);

/// Least-squares kappa with dn = -kappa dx; infinite when ||dx|| < inf_threshold ||dn||.
PrincipalCurvature fit_principal(const Vec4& dx, const Vec4& dn, double parallel_tol = 1e-7,
                                 double inf_threshold = 1e-10);

PrincipalCurvature fit_principal_smooth(const SemiDiscreteSurface& S, int i, int j,
                                        double inf_threshold = 1e-10);
PrincipalCurvature fit_principal_edge(const SemiDiscreteSurface& S, int i, int j,
                                      double inf_threshold = 1e-10);

enum class CurvatureSource { MixedArea, ClosedForm };

struct EdgeCurvatures {
    CurvatureValue K, H;
    CurvatureSource source = CurvatureSource::MixedArea;
    double residual = 0;  // proportionality residual (mixed-area source)
};

/// K, H from A(n,n) = K A(x,x), A(x,n) = -H A(x,x) on edge (i, i+1) at sample j.
EdgeCurvatures gauss_mean_mixed(const SemiDiscreteSurface& S, int i, int j);

/// Prop.-3.1 closed forms from the three principal curvatures of an edge.
EdgeCurvatures gauss_mean_closed(const CurvatureValue& kappa, const CurvatureValue& kappa1,
                                 const CurvatureValue& kappa01);

struct WeingartenRelation {
    enum class Kind { MinMax, BrLW, BiLW, ParallelFlat, ParallelCurved } kind;
    double param = 0;  // s, s_theta or theta depending on kind

    static WeingartenRelation minmax() { return {Kind::MinMax, 0}; }
    static WeingartenRelation brlw(double s) { return {Kind::BrLW, s}; }
    static WeingartenRelation bilw(double s) { return {Kind::BiLW, s}; }
    static WeingartenRelation parallel_flat(double theta) { return {Kind::ParallelFlat, theta}; }
    static WeingartenRelation parallel_curved(double s_theta) { return {Kind::ParallelCurved, s_theta}; }
};

struct WeingartenReport {
    double max_residual = 0;
    int evaluated = 0;
    int skipped = 0;  // infinite-flag or invalid edges
    int worst_i = 0, worst_j = 0;
};

/// Max |relation residual| over all valid edges; diagnostic, never throws.
WeingartenReport weingarten_residual(const SemiDiscreteSurface& S, const WeingartenRelation& rel);

/// Residual of one relation at given K, H (helper shared with reports).
double relation_residual(const WeingartenRelation& rel, double K, double H);

} // namespace sdlw
