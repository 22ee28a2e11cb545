#pragma once

#include <optional>
#include <vector>

#include "sdlw/curvature.hpp"
#include "sdlw/holonet.hpp"
#include "sdlw/surface.hpp"

namespace sdlw {

enum class DirClass { None, FPS, S };

/// FPS classification of one vertex: sign changes or blow-up of the principal
/// curvatures, separately for the discrete and the smooth direction. The
/// infinite cases are reported as S outright.
struct VertexClass {
    DirClass discrete_dir = DirClass::None;
    DirClass smooth_dir = DirClass::None;
    bool boundary = false;  // some neighbors missing; partial classification
    // evidence
    PrincipalCurvature kappa_m1, kappa_0, kappa_p1;  // smooth kappas at k0-1, k0, k0+1
    PrincipalCurvature kappa_m10, kappa_01;          // adjacent edge kappas
    bool has_left = false, has_right = false;
};

VertexClass classify_vertex(const SemiDiscreteSurface& S, int i, int j,
                            double inf_threshold = 1e-10);

/// Def.-5.2 embeddedness of an edge: d and d1 lie strictly to the same side of
/// the line through D within the tangent plane. Throws DegeneratePlane when the
/// three vectors are not coplanar, when d is collinear with D, or when a
/// direction lies on the line within the strictness margin.
bool edge_embedded(const EdgeVectors& e, double coplanar_tol = 1e-8, double margin = 1e-10);

bool edge_embedded_x(const SemiDiscreteSurface& S, int i, int j);
/// Embeddedness of the Gauss map on edge (i, i+1).
bool edge_embedded_n(const SemiDiscreteSurface& S, int i, int j);

enum class FpRefinement { FP, S, NotApplicable };

/// Def.-5.3 refinement at a vertex that is FPS with respect to just the smooth
/// direction: S when the Gauss map is embedded on the edge whose
/// kappa-product is negative, FP when it is not. NotApplicable is returned
/// (never thrown) when any hypothesis fails.
FpRefinement refine_fp_vs_s(const SemiDiscreteSurface& S, int i, int j);

enum class PlaneVariant { TangentPlane, CMC1Plane };

struct EdgeStatus {
    bool spacelike = true;
    bool singular = false;
    std::optional<bool> embedded_x;
    std::optional<bool> embedded_n;
};

/// Causal type of the edge plane in a Lorentzian ambient. TangentPlane tests
/// span{dx, Dx}; CMC1Plane tests the plane spanned by {dn, Dn, dDn} after a
/// rank-revealing reduction (Def. 5.6, with this surface's normal field as the
/// CMC1 surface). Spacelike means both leading Gram minors exceed 1e-10.
EdgeStatus singular_edge_lorentz(const SemiDiscreteSurface& S, int i, int j, PlaneVariant variant);

struct Interval {
    double lo = 0, hi = 0;
    bool contains(double v, double band = 0) const { return v >= lo - band && v <= hi + band; }
};

/// Thm.-5.1 parameter ranges at vertex (i, j): parallel offsets theta for
/// which the vertex is singular in each direction. The left smooth-direction
/// interval mirrors the displayed right-edge formula and is flagged as such.
struct ThetaIntervals {
    Interval discrete;
    Interval smooth_right;
    Interval smooth_left;
    bool smooth_left_extrapolated = true;
};

ThetaIntervals theta_singular_interval(const HoloNet& net, int eps, int i, int j);

enum class FpsDirection { Discrete, Smooth };

/// Thm.-5.2 sign-pattern systems for BrLW/BiLW surfaces. Discrete direction
/// evaluates the Delta-inequalities at vertex i; Smooth evaluates the
/// d-inequalities on edge (i, i+1).
bool brlw_fps_condition(const HoloNet& net, double s, double lambda, int i, int j,
                        FpsDirection direction);

/// Singular-edge criterion for maximal surfaces: the tangent circle at (g, g1)
/// meets the unit circle (tangently, transversally or coincidently).
bool maximal_edge_circle_test(const HoloNet& net, int i, int j);

/// Thm.-5.4 criterion for CMC1 surfaces in S^{2,1}: transversal intersection;
/// forced true when |g| = 1 or |g1| = 1 (the edge is lightlike for all lambda).
bool cmc1_edge_circle_test(const HoloNet& net, int i, int j);

/// Condition (C): 4|Dg|^2 |dg|^2 (1-|g|^2)(1-|g1|^2) < (2 Re[(1-conj(g) g1) conj(Dg) dg])^2,
/// forced true when |g| = 1 or |g1| = 1. Algebraic route to cmc1_edge_circle_test.
bool cmc1_condition_c(const HoloNet& net, int i, int j);

struct AdjacencyReport {
    std::vector<std::pair<int, int>> violations;  // (strip index, sample index)
    int singular_vertices = 0;
    int smooth_finite_fps = 0;  // maximal surfaces: must be zero (Thm. 5.3)
};

/// Thm. 5.3 on a built maximal surface: every discrete-direction singular
/// vertex with finite edge curvatures has at least one singular adjacent edge.
AdjacencyReport check_maximal_adjacency(const SemiDiscreteSurface& S);

/// Thm. 5.5 proxy over a finite lambda sweep: vertices singular at every swept
/// lambda must keep one adjacent edge Def.-5.6-singular at every swept lambda.
AdjacencyReport check_cmc1_adjacency(const HoloNet& net, const std::vector<double>& lambda_sweep,
                                     const ODESettings& solver);

} // namespace sdlw
