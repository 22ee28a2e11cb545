#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdlw/job.hpp"
#include "sdlw/mesh.hpp"
#include "sdlw/minmax.hpp"
#include "sdlw/projection.hpp"
#include "sdlw/singularity.hpp"
#include "sdlw/spaceform.hpp"

namespace py = pybind11;
using namespace sdlw;

namespace {

py::array_t<double> vec4_grid_array(const Grid<Vec4>& g) {
    py::array_t<double> arr({g.nk, g.nt, 4});
    auto view = arr.mutable_unchecked<3>();
    for (int i = 0; i < g.nk; ++i)
        for (int j = 0; j < g.nt; ++j)
            for (int c = 0; c < 4; ++c) view(i, j, c) = g(i, j)[c];
    return arr;
}

py::array_t<std::complex<double>> cplx_grid_array(const Grid<cplx>& g) {
    py::array_t<std::complex<double>> arr({g.nk, g.nt});
    auto view = arr.mutable_unchecked<2>();
    for (int i = 0; i < g.nk; ++i)
        for (int j = 0; j < g.nt; ++j) view(i, j) = g(i, j);
    return arr;
}

Vec4 vec4_from(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Semi-discrete linear Weingarten surfaces in R^3, R^{2,1}, H^3 and S^{2,1}: "
              "Weierstrass-type construction, discrete curvatures, parallel families and "
              "singularity classification";

    // base first: translators run newest-first, so the derived type wins
    py::register_exception<Error>(m, "NumericalError");
    py::register_exception<ValidationError>(m, "ValidationError");

    py::class_<GridSpec>(m, "GridSpec")
        .def(py::init([](int k_min, int k_max, double t_min, double t_max, double t_step) {
                 GridSpec g{k_min, k_max, t_min, t_max, t_step};
                 g.validate();
                 return g;
             }),
             py::arg("k_min"), py::arg("k_max"), py::arg("t_min"), py::arg("t_max"),
             py::arg("t_step"))
        .def_readonly("k_min", &GridSpec::k_min)
        .def_readonly("k_max", &GridSpec::k_max)
        .def_readonly("t_min", &GridSpec::t_min)
        .def_readonly("t_max", &GridSpec::t_max)
        .def_readonly("t_step", &GridSpec::t_step)
        .def("num_strips", &GridSpec::num_strips)
        .def("num_samples", &GridSpec::num_samples)
        .def("t", &GridSpec::t)
        .def("k", &GridSpec::k);

    py::class_<ODESettings>(m, "ODESettings")
        .def(py::init([](double step, double error_budget) {
                 ODESettings s;
                 s.step = step;
                 s.error_budget = error_budget;
                 return s;
             }),
             py::arg("step") = 1e-3, py::arg("error_budget") = 1e-8)
        .def_readwrite("step", &ODESettings::step)
        .def_readwrite("error_budget", &ODESettings::error_budget);

    py::class_<NetReport>(m, "NetReport")
        .def_readonly("ok", &NetReport::pass)
        .def_readonly("max_residual", &NetReport::max_residual)
        .def_readonly("worst_k", &NetReport::worst_k)
        .def_readonly("worst_t", &NetReport::worst_t)
        .def_readonly("sign_ok", &NetReport::sign_ok)
        .def_readonly("message", &NetReport::message);

    py::class_<HoloNet>(m, "HoloNet")
        .def_readonly("grid", &HoloNet::grid)
        .def_readonly("tau", &HoloNet::tau)
        .def_readonly("sigma", &HoloNet::sigma)
        .def("g", [](const HoloNet& n) { return cplx_grid_array(n.g); })
        .def("dg", [](const HoloNet& n) { return cplx_grid_array(n.dg); });

    m.def("make_linear_net", &make_linear_net, py::arg("a"), py::arg("b"), py::arg("grid"));
    m.def("validate_net", &validate_net, py::arg("net"), py::arg("tol") = 1e-8);
    m.def(
        "propagate_net",
        [](const HoloNet& base_net, const std::vector<double>& sigmas,
           const std::vector<cplx>& seeds, const ODESettings& solver) {
            Strip base;
            for (int j = 0; j < base_net.grid.num_samples(); ++j) {
                base.g.push_back(base_net.g(0, j));
                base.dg.push_back(base_net.dg(0, j));
            }
            GridSpec grid = base_net.grid;
            grid.k_max = grid.k_min + (int)sigmas.size();
            return propagate_net(grid, base, base_net.tau, sigmas, seeds, solver);
        },
        py::arg("base_net"), py::arg("sigmas"), py::arg("seeds"), py::arg("solver"),
        "Extends the first strip of base_net by one gap per (sigma, seed) pair.");

    py::enum_<Family>(m, "Family")
        .value("Minimal", Family::Minimal)
        .value("Maximal", Family::Maximal)
        .value("BrLW", Family::BrLW)
        .value("BiLW", Family::BiLW);

    py::class_<SemiDiscreteSurface>(m, "SemiDiscreteSurface")
        .def_readonly("grid", &SemiDiscreteSurface::grid)
        .def_property_readonly("family",
                               [](const SemiDiscreteSurface& s) { return s.provenance.family; })
        .def_property_readonly("s", [](const SemiDiscreteSurface& s) { return s.provenance.s; })
        .def_property_readonly("theta",
                               [](const SemiDiscreteSurface& s) { return s.provenance.theta; })
        .def("positions", [](const SemiDiscreteSurface& s) { return vec4_grid_array(s.x); })
        .def("normals", [](const SemiDiscreteSurface& s) { return vec4_grid_array(s.n); })
        .def("dx", [](const SemiDiscreteSurface& s) { return vec4_grid_array(s.dx); })
        .def("dn", [](const SemiDiscreteSurface& s) { return vec4_grid_array(s.dn); })
        .def("valid",
             [](const SemiDiscreteSurface& s) {
                 py::array_t<bool> arr({s.valid.nk, s.valid.nt});
                 auto view = arr.mutable_unchecked<2>();
                 for (int i = 0; i < s.valid.nk; ++i)
                     for (int j = 0; j < s.valid.nt; ++j) view(i, j) = s.valid(i, j) != 0;
                 return arr;
             })
        .def("crossings",
             [](const SemiDiscreteSurface& s) { return s.crossings; })
        .def("pieces", &SemiDiscreteSurface::pieces, py::arg("strip"));

    m.def(
        "build_minimal",
        [](const HoloNet& net, const std::array<double, 4>& base_point, const ODESettings& s) {
            return build_minmax(net, 1, vec4_from(base_point), s);
        },
        py::arg("net"), py::arg("base_point") = std::array<double, 4>{0, 0, 0, 0},
        py::arg("solver") = ODESettings{});
    m.def(
        "build_maximal",
        [](const HoloNet& net, const std::array<double, 4>& base_point, const ODESettings& s) {
            return build_minmax(net, -1, vec4_from(base_point), s);
        },
        py::arg("net"), py::arg("base_point") = std::array<double, 4>{0, 0, 0, 0},
        py::arg("solver") = ODESettings{});
    m.def("parallel_flat", &parallel_flat, py::arg("surface"), py::arg("theta"));

    py::class_<FrameField>(m, "FrameField")
        .def_readonly("grid", &FrameField::grid)
        .def_readonly("lambda_", &FrameField::lambda);

    py::class_<LWParams>(m, "LWParams")
        .def(py::init<double>(), py::arg("s"))
        .def_readonly("s", &LWParams::s);

    py::class_<LiftedPair>(m, "LiftedPair")
        .def_readonly("x", &LiftedPair::x)
        .def_readonly("n", &LiftedPair::n);

    m.def(
        "integrate_frame",
        [](const HoloNet& net, double lambda, const ODESettings& solver) {
            return integrate_frame(net, lambda, Mat2C::identity(), solver);
        },
        py::arg("net"), py::arg("lambda_"), py::arg("solver") = ODESettings{});
    m.def("lift_surface", &lift_surface, py::arg("frame"), py::arg("params"));
    m.def("parallel_curved", &parallel_curved, py::arg("pair"), py::arg("theta"));
    m.def("reparametrized_weierstrass_data", &reparametrized_weierstrass_data, py::arg("net"),
          py::arg("s"), py::arg("theta"));

    py::class_<CurvatureValue>(m, "CurvatureValue")
        .def_readonly("value", &CurvatureValue::value)
        .def_readonly("infinite", &CurvatureValue::infinite)
        .def_readonly("sign", &CurvatureValue::sign)
        .def("__float__", [](const CurvatureValue& v) {
            if (v.infinite) throw py::value_error("infinite curvature flag");
            return v.value;
        });

    py::class_<PrincipalCurvature>(m, "PrincipalCurvature")
        .def_readonly("kappa", &PrincipalCurvature::kappa)
        .def_readonly("fit_residual", &PrincipalCurvature::fit_residual);

    py::class_<EdgeCurvatures>(m, "EdgeCurvatures")
        .def_readonly("K", &EdgeCurvatures::K)
        .def_readonly("H", &EdgeCurvatures::H)
        .def_readonly("residual", &EdgeCurvatures::residual);

    m.def("fit_principal_smooth", &fit_principal_smooth, py::arg("surface"), py::arg("i"),
          py::arg("j"), py::arg("inf_threshold") = 1e-10);
    m.def("fit_principal_edge", &fit_principal_edge, py::arg("surface"), py::arg("i"),
          py::arg("j"), py::arg("inf_threshold") = 1e-10);
    m.def("gauss_mean_mixed", &gauss_mean_mixed, py::arg("surface"), py::arg("i"), py::arg("j"));
    m.def("gauss_mean_closed", &gauss_mean_closed, py::arg("kappa"), py::arg("kappa1"),
          py::arg("kappa01"));

    py::class_<WeingartenReport>(m, "WeingartenReport")
        .def_readonly("max_residual", &WeingartenReport::max_residual)
        .def_readonly("evaluated", &WeingartenReport::evaluated)
        .def_readonly("skipped", &WeingartenReport::skipped);

    m.def(
        "weingarten_residual",
        [](const SemiDiscreteSurface& S, const std::string& kind, double param) {
            WeingartenRelation rel = WeingartenRelation::minmax();
            if (kind == "minmax")
                rel = WeingartenRelation::minmax();
            else if (kind == "brlw")
                rel = WeingartenRelation::brlw(param);
            else if (kind == "bilw")
                rel = WeingartenRelation::bilw(param);
            else if (kind == "parallel_flat")
                rel = WeingartenRelation::parallel_flat(param);
            else if (kind == "parallel_curved")
                rel = WeingartenRelation::parallel_curved(param);
            else
                throw py::value_error("unknown relation kind '" + kind + "'");
            return weingarten_residual(S, rel);
        },
        py::arg("surface"), py::arg("kind"), py::arg("param") = 0.0);

    py::enum_<DirClass>(m, "DirClass")
        .value("None_", DirClass::None)
        .value("FPS", DirClass::FPS)
        .value("S", DirClass::S);

    py::class_<VertexClass>(m, "VertexClass")
        .def_readonly("discrete_dir", &VertexClass::discrete_dir)
        .def_readonly("smooth_dir", &VertexClass::smooth_dir)
        .def_readonly("boundary", &VertexClass::boundary);

    py::enum_<FpRefinement>(m, "FpRefinement")
        .value("FP", FpRefinement::FP)
        .value("S", FpRefinement::S)
        .value("NotApplicable", FpRefinement::NotApplicable);

    py::enum_<PlaneVariant>(m, "PlaneVariant")
        .value("TangentPlane", PlaneVariant::TangentPlane)
        .value("CMC1Plane", PlaneVariant::CMC1Plane);

    py::class_<EdgeStatus>(m, "EdgeStatus")
        .def_readonly("spacelike", &EdgeStatus::spacelike)
        .def_readonly("singular", &EdgeStatus::singular)
        .def_readonly("embedded_x", &EdgeStatus::embedded_x)
        .def_readonly("embedded_n", &EdgeStatus::embedded_n);

    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("contains", &Interval::contains, py::arg("value"), py::arg("band") = 0.0);

    py::class_<ThetaIntervals>(m, "ThetaIntervals")
        .def_readonly("discrete", &ThetaIntervals::discrete)
        .def_readonly("smooth_right", &ThetaIntervals::smooth_right)
        .def_readonly("smooth_left", &ThetaIntervals::smooth_left)
        .def_readonly("smooth_left_extrapolated", &ThetaIntervals::smooth_left_extrapolated);

    py::enum_<FpsDirection>(m, "FpsDirection")
        .value("Discrete", FpsDirection::Discrete)
        .value("Smooth", FpsDirection::Smooth);

    py::class_<AdjacencyReport>(m, "AdjacencyReport")
        .def_readonly("violations", &AdjacencyReport::violations)
        .def_readonly("singular_vertices", &AdjacencyReport::singular_vertices)
        .def_readonly("smooth_finite_fps", &AdjacencyReport::smooth_finite_fps);

    m.def("classify_vertex", &classify_vertex, py::arg("surface"), py::arg("i"), py::arg("j"),
          py::arg("inf_threshold") = 1e-10);
    m.def("refine_fp_vs_s", &refine_fp_vs_s, py::arg("surface"), py::arg("i"), py::arg("j"));
    m.def("edge_embedded_x", &edge_embedded_x, py::arg("surface"), py::arg("i"), py::arg("j"));
    m.def("edge_embedded_n", &edge_embedded_n, py::arg("surface"), py::arg("i"), py::arg("j"));
    m.def("singular_edge_lorentz", &singular_edge_lorentz, py::arg("surface"), py::arg("i"),
          py::arg("j"), py::arg("variant"));
    m.def("theta_singular_interval", &theta_singular_interval, py::arg("net"), py::arg("eps"),
          py::arg("i"), py::arg("j"));
    m.def("brlw_fps_condition", &brlw_fps_condition, py::arg("net"), py::arg("s"),
          py::arg("lambda_"), py::arg("i"), py::arg("j"), py::arg("direction"));
    m.def("maximal_edge_circle_test", &maximal_edge_circle_test, py::arg("net"), py::arg("i"),
          py::arg("j"));
    m.def("cmc1_edge_circle_test", &cmc1_edge_circle_test, py::arg("net"), py::arg("i"),
          py::arg("j"));
    m.def("cmc1_condition_c", &cmc1_condition_c, py::arg("net"), py::arg("i"), py::arg("j"));
    m.def("check_maximal_adjacency", &check_maximal_adjacency, py::arg("surface"));
    m.def("check_cmc1_adjacency", &check_cmc1_adjacency, py::arg("net"), py::arg("lambda_sweep"),
          py::arg("solver") = ODESettings{});

    m.def(
        "project_surface",
        [](const SemiDiscreteSurface& S) {
            const MeshData mesh = build_mesh(S);
            py::array_t<double> arr({(int)mesh.vertices.size(), 3});
            auto view = arr.mutable_unchecked<2>();
            for (size_t v = 0; v < mesh.vertices.size(); ++v)
                for (int c = 0; c < 3; ++c) view((int)v, c) = mesh.vertices[v][(size_t)c];
            return arr;
        },
        py::arg("surface"), "Projected 3D coordinates of all valid vertices.");

    m.def(
        "export_mesh",
        [](const SemiDiscreteSurface& S, const std::string& path_stem) {
            const MeshData mesh = build_mesh(S);
            write_obj(mesh, path_stem + ".obj");
            write_ply(mesh, path_stem + ".ply");
            return std::vector<std::string>{path_stem + ".obj", path_stem + ".ply"};
        },
        py::arg("surface"), py::arg("path_stem"));

    m.def(
        "run_job",
        [](const std::string& config_json, const std::string& out_dir) {
            const JobConfig cfg = parse_job_config(config_json);
            const JobResult res = run_job(cfg, out_dir);
            py::dict d;
            d["exit_code"] = res.exit_code;
            d["artifacts"] = res.artifacts;
            d["summary"] = res.summary;
            return d;
        },
        py::arg("config_json"), py::arg("out_dir"));
}
