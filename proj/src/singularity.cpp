#include "sdlw/singularity.hpp"

#include <algorithm>
#include <cmath>

#include "sdlw/circle.hpp"
#include "sdlw/frame.hpp"
#include "sdlw/spaceform.hpp"

namespace sdlw {

namespace {

double edot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

bool product_negative(const PrincipalCurvature& a, const PrincipalCurvature& b) {
    return !a.kappa.infinite && !b.kappa.infinite && a.kappa.value * b.kappa.value < 0;
}

bool unit_modulus(cplx g) { return std::abs(1.0 - std::norm(g)) <= 1e-12 * (1.0 + std::norm(g)); }

} // namespace

VertexClass classify_vertex(const SemiDiscreteSurface& S, int i, int j, double inf_threshold) {
    VertexClass vc;
    vc.has_left = i > 0 && S.vertex_valid(i - 1, j);
    vc.has_right = i + 1 < S.num_strips() && S.vertex_valid(i + 1, j);
    vc.boundary = !(vc.has_left && vc.has_right) || !S.vertex_valid(i, j);
    if (!S.vertex_valid(i, j)) return vc;

    vc.kappa_0 = fit_principal_smooth(S, i, j, inf_threshold);
    if (vc.has_left) {
        vc.kappa_m1 = fit_principal_smooth(S, i - 1, j, inf_threshold);
        vc.kappa_m10 = fit_principal_edge(S, i - 1, j, inf_threshold);
    }
    if (vc.has_right) {
        vc.kappa_p1 = fit_principal_smooth(S, i + 1, j, inf_threshold);
        vc.kappa_01 = fit_principal_edge(S, i, j, inf_threshold);
    }

    if (vc.has_left && vc.has_right) {
        if (vc.kappa_m10.kappa.infinite || vc.kappa_01.kappa.infinite)
            vc.discrete_dir = DirClass::S;
        else if (vc.kappa_m10.kappa.value * vc.kappa_01.kappa.value < 0)
            vc.discrete_dir = DirClass::FPS;
    }

    bool smooth_inf = vc.kappa_0.kappa.infinite;
    bool smooth_flip = false;
    if (vc.has_left) {
        smooth_inf = smooth_inf || vc.kappa_m1.kappa.infinite;
        smooth_flip = smooth_flip || product_negative(vc.kappa_m1, vc.kappa_0);
    }
    if (vc.has_right) {
        smooth_inf = smooth_inf || vc.kappa_p1.kappa.infinite;
        smooth_flip = smooth_flip || product_negative(vc.kappa_0, vc.kappa_p1);
    }
    if (smooth_inf)
        vc.smooth_dir = DirClass::S;
    else if (smooth_flip)
        vc.smooth_dir = DirClass::FPS;
    return vc;
}

bool edge_embedded(const EdgeVectors& e, double coplanar_tol, double margin) {
    const double nD = e.D.norm();
    if (nD == 0) throw DegeneratePlane("edge difference vector vanishes");
    const Vec4 e1 = e.D * (1.0 / nD);

    Vec4 v = e.d - e1 * edot(e.d, e1);
    const double nv = v.norm();
    if (nv <= coplanar_tol * e.d.norm())
        throw DegeneratePlane("d is collinear with the edge line");
    const Vec4 e2 = v * (1.0 / nv);

    const Vec4 w = e.d1 - e1 * edot(e.d1, e1) - e2 * edot(e.d1, e2);
    if (w.norm() > coplanar_tol * e.d1.norm())
        throw DegeneratePlane("edge vectors are not coplanar (not a conjugate-net edge)");

    // d's side coordinate is +nv by construction; only d1's side can vary
    const double b = edot(e.d1, e2);
    if (std::abs(b) <= margin * e.d1.norm())
        throw DegeneratePlane("d1 lies on the edge line within the strictness margin");
    return b > 0;
}

bool edge_embedded_x(const SemiDiscreteSurface& S, int i, int j) {
    return edge_embedded(x_edge(S, i, j));
}

bool edge_embedded_n(const SemiDiscreteSurface& S, int i, int j) {
    return edge_embedded(n_edge(S, i, j));
}

namespace {

struct PlaneBasis {
    Vec4 u1, u2;
};

PlaneBasis reduce_to_plane(std::vector<Vec4> span) {
    double best = -1;
    size_t bi = 0;
    for (size_t p = 0; p < span.size(); ++p)
        if (span[p].norm() > best) {
            best = span[p].norm();
            bi = p;
        }
    if (best <= 0) throw RankDeficient("spanning set is zero");
    const Vec4 u1 = span[bi] * (1.0 / best);

    double best2 = -1;
    Vec4 u2;
    for (size_t p = 0; p < span.size(); ++p) {
        if (p == bi) continue;
        const Vec4 r = span[p] - u1 * edot(span[p], u1);
        if (r.norm() > best2) {
            best2 = r.norm();
            u2 = r;
        }
    }
    if (best2 <= 1e-10 * best) throw RankDeficient("spanning set has rank < 2");
    return {span[bi], u2};
}

bool plane_spacelike(const PlaneBasis& b, const AmbientMetric& m) {
    constexpr double tol = 1e-10;
    const double g11 = inner(b.u1, b.u1, m);
    const double g12 = inner(b.u1, b.u2, m);
    const double g22 = inner(b.u2, b.u2, m);
    const double s1 = b.u1.norm() * b.u1.norm();
    const double s2 = b.u1.norm() * b.u2.norm();
    return g11 > tol * s1 && (g11 * g22 - g12 * g12) > tol * s2 * s2;
}

} // namespace

EdgeStatus singular_edge_lorentz(const SemiDiscreteSurface& S, int i, int j, PlaneVariant variant) {
    if (!S.ambient.lorentzian())
        throw ValidationError("singular edges are defined only in Lorentzian ambient spaces");

    PlaneBasis basis;
    if (variant == PlaneVariant::TangentPlane) {
        basis = reduce_to_plane({S.dx(i, j), S.x(i + 1, j) - S.x(i, j)});
    } else {
        basis = reduce_to_plane(
            {S.dn(i, j), S.n(i + 1, j) - S.n(i, j), S.dn(i + 1, j) - S.dn(i, j)});
    }

    EdgeStatus st;
    st.spacelike = plane_spacelike(basis, S.ambient);
    st.singular = !st.spacelike;
    try {
        st.embedded_x = edge_embedded_x(S, i, j);
    } catch (const Error&) {
    }
    try {
        st.embedded_n = edge_embedded_n(S, i, j);
    } catch (const Error&) {
    }
    return st;
}

ThetaIntervals theta_singular_interval(const HoloNet& net, int eps, int i, int j) {
    if (i < 1 || i + 1 >= net.grid.num_strips())
        throw ValidationError("theta_singular_interval needs both neighbor strips");
    const cplx gm = net.g(i - 1, j), g0 = net.g(i, j), gp = net.g(i + 1, j);
    if (eps == -1)
        for (cplx g : {gm, g0, gp})
            if (unit_modulus(g))
                throw HypothesisViolation("Thm. 5.1 (maximal case) requires |g| != 1 at the vertex and neighbors");

    auto dfac = [&](cplx g) { return 1.0 + eps * std::norm(g); };
    const double am = -net.sigma[(size_t)(i - 1)] * dfac(g0) * dfac(gm) / (4.0 * std::norm(g0 - gm));
    const double ap = -net.sigma[(size_t)i] * dfac(g0) * dfac(gp) / (4.0 * std::norm(gp - g0));

    auto bfac = [&](int ii) {
        const cplx g = net.g(ii, j);
        return -net.tau[(size_t)j] * dfac(g) * dfac(g) / (4.0 * std::norm(net.dg(ii, j)));
    };
    const double b0 = bfac(i), bp = bfac(i + 1), bm = bfac(i - 1);

    ThetaIntervals out;
    out.discrete = {std::min(am, ap), std::max(am, ap)};
    out.smooth_right = {std::min(b0, bp), std::max(b0, bp)};
    out.smooth_left = {std::min(bm, b0), std::max(bm, b0)};
    return out;
}

bool brlw_fps_condition(const HoloNet& net, double s, double lambda, int i, int j,
                        FpsDirection direction) {
    auto alpha = [&](cplx g) { return 1.0 + s * std::norm(g); };
    double A0, B0, A1, B1;
    if (direction == FpsDirection::Discrete) {
        if (i < 1 || i + 1 >= net.grid.num_strips())
            throw ValidationError("discrete-direction condition needs both adjacent gaps");
        const cplx gm = net.g(i - 1, j), g0 = net.g(i, j), gp = net.g(i + 1, j);
        const double qm = std::norm(g0 - gm), qp = std::norm(gp - g0);
        const double lsm = lambda * net.sigma[(size_t)(i - 1)] * alpha(gm) * alpha(g0);
        const double lsp = lambda * net.sigma[(size_t)i] * alpha(g0) * alpha(gp);
        A0 = qm * (1 + s) - lsm;
        B0 = qm * (1 - s) + lsm;
        A1 = qp * (1 + s) - lsp;
        B1 = qp * (1 - s) + lsp;
    } else {
        if (i + 1 >= net.grid.num_strips())
            throw ValidationError("smooth-direction condition needs the edge (k, k+1)");
        const cplx g0 = net.g(i, j), gp = net.g(i + 1, j);
        const double p0 = std::norm(net.dg(i, j)), p1 = std::norm(net.dg(i + 1, j));
        const double lt0 = lambda * net.tau[(size_t)j] * alpha(g0) * alpha(g0);
        const double lt1 = lambda * net.tau[(size_t)j] * alpha(gp) * alpha(gp);
        A0 = p0 * (1 + s) - lt0;
        B0 = p0 * (1 - s) + lt0;
        A1 = p1 * (1 + s) - lt1;
        B1 = p1 * (1 - s) + lt1;
    }
    const double first = A0 * A1, second = B0 * B1;
    return (first > 0 && second < 0) || (first < 0 && second > 0);
}

bool maximal_edge_circle_test(const HoloNet& net, int i, int j) {
    const PlanarCircle c =
        tangent_circle(net.g(i, j), net.dg(i, j), net.g(i + 1, j), net.dg(i + 1, j));
    const CircleRelation rel = circle_vs_unit_circle(c);
    return rel != CircleRelation::Disjoint;
}

bool cmc1_edge_circle_test(const HoloNet& net, int i, int j) {
    if (unit_modulus(net.g(i, j)) || unit_modulus(net.g(i + 1, j))) return true;
    const PlanarCircle c =
        tangent_circle(net.g(i, j), net.dg(i, j), net.g(i + 1, j), net.dg(i + 1, j));
    return circle_vs_unit_circle(c) == CircleRelation::Transversal;
}

bool cmc1_condition_c(const HoloNet& net, int i, int j) {
    const cplx g = net.g(i, j), g1 = net.g(i + 1, j), dg = net.dg(i, j);
    if (unit_modulus(g) || unit_modulus(g1)) return true;
    const cplx delta = g1 - g;
    const double lhs = 4.0 * std::norm(delta) * std::norm(dg) * (1.0 - std::norm(g)) *
                       (1.0 - std::norm(g1));
    const double re = 2.0 * ((1.0 - std::conj(g) * g1) * std::conj(delta) * dg).real();
    return lhs < re * re;
}

FpRefinement refine_fp_vs_s(const SemiDiscreteSurface& S, int i, int j) {
    VertexClass vc;
    try {
        vc = classify_vertex(S, i, j);
    } catch (const Error&) {
        return FpRefinement::NotApplicable;
    }
    if (vc.boundary) return FpRefinement::NotApplicable;
    for (const PrincipalCurvature* k :
         {&vc.kappa_m1, &vc.kappa_0, &vc.kappa_p1, &vc.kappa_m10, &vc.kappa_01})
        if (k->kappa.infinite) return FpRefinement::NotApplicable;
    if (vc.smooth_dir != DirClass::FPS || vc.discrete_dir != DirClass::None)
        return FpRefinement::NotApplicable;

    if (S.ambient.lorentzian()) {
        try {
            if (!singular_edge_lorentz(S, i - 1, j, PlaneVariant::TangentPlane).spacelike ||
                !singular_edge_lorentz(S, i, j, PlaneVariant::TangentPlane).spacelike)
                return FpRefinement::NotApplicable;
        } catch (const Error&) {
            return FpRefinement::NotApplicable;
        }
    }

    const double l_m10 = vc.kappa_m1.kappa.value * vc.kappa_0.kappa.value;
    const double l_10 = vc.kappa_0.kappa.value * vc.kappa_p1.kappa.value;
    const bool one_negative = (l_m10 < 0 && l_10 > 0) || (l_m10 > 0 && l_10 < 0);
    if (!one_negative) return FpRefinement::NotApplicable;

    const int edge_i = l_m10 < 0 ? i - 1 : i;
    try {
        return edge_embedded_n(S, edge_i, j) ? FpRefinement::S : FpRefinement::FP;
    } catch (const Error&) {
        return FpRefinement::NotApplicable;
    }
}

AdjacencyReport check_maximal_adjacency(const SemiDiscreteSurface& S) {
    AdjacencyReport rep;
    for (int i = 1; i + 1 < S.num_strips(); ++i) {
        for (int j = 0; j < S.num_samples(); ++j) {
            if (!S.vertex_valid(i, j) || !S.vertex_valid(i - 1, j) || !S.vertex_valid(i + 1, j))
                continue;
            const VertexClass vc = classify_vertex(S, i, j);
            if (vc.smooth_dir == DirClass::FPS && !vc.kappa_m1.kappa.infinite &&
                !vc.kappa_0.kappa.infinite && !vc.kappa_p1.kappa.infinite)
                ++rep.smooth_finite_fps;
            if (vc.discrete_dir != DirClass::FPS) continue;  // finite kappas by definition
            ++rep.singular_vertices;
            const bool left = singular_edge_lorentz(S, i - 1, j, PlaneVariant::TangentPlane).singular;
            const bool right = singular_edge_lorentz(S, i, j, PlaneVariant::TangentPlane).singular;
            if (!left && !right) rep.violations.emplace_back(i, j);
        }
    }
    return rep;
}

AdjacencyReport check_cmc1_adjacency(const HoloNet& net, const std::vector<double>& lambda_sweep,
                                     const ODESettings& solver) {
    AdjacencyReport rep;
    if (lambda_sweep.empty()) return rep;
    const int nk = net.grid.num_strips(), nt = net.grid.num_samples();

    Grid<std::uint8_t> vertex_all(nk, nt, 1);  // discrete-singular (finite) at every lambda
    Grid<std::uint8_t> left_all(nk, nt, 1), right_all(nk, nt, 1);

    for (double lambda : lambda_sweep) {
        const FrameField F = integrate_frame(net, lambda, Mat2C::identity(), solver);
        const LiftedPair pair = lift_surface(F, LWParams{-1.0});
        for (int i = 1; i + 1 < nk; ++i) {
            for (int j = 0; j < nt; ++j) {
                const PrincipalCurvature km = fit_principal_edge(pair.n, i - 1, j);
                const PrincipalCurvature kp = fit_principal_edge(pair.n, i, j);
                if (!product_negative(km, kp)) vertex_all(i, j) = 0;
                if (!singular_edge_lorentz(pair.x, i - 1, j, PlaneVariant::CMC1Plane).singular)
                    left_all(i, j) = 0;
                if (!singular_edge_lorentz(pair.x, i, j, PlaneVariant::CMC1Plane).singular)
                    right_all(i, j) = 0;
            }
        }
    }

    for (int i = 1; i + 1 < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            if (!vertex_all(i, j)) continue;
            ++rep.singular_vertices;
            if (!left_all(i, j) && !right_all(i, j)) rep.violations.emplace_back(i, j);
        }
    return rep;
}

} // namespace sdlw
