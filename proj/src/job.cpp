#include "sdlw/job.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sdlw/frame.hpp"
#include "sdlw/mesh.hpp"
#include "sdlw/minmax.hpp"
#include "sdlw/singularity.hpp"
#include "sdlw/spaceform.hpp"

namespace sdlw {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt(const CurvatureValue& v) {
    if (v.infinite) return v.sign >= 0 ? "inf+" : "inf-";
    return fmt(v.value);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".partial";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IOError("cannot open " + tmp);
        out << content;
        if (!out) throw IOError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IOError("rename failed for " + path);
}

Family family_from_string(const std::string& f) {
    if (f == "minimal") return Family::Minimal;
    if (f == "maximal") return Family::Maximal;
    if (f == "brlw") return Family::BrLW;
    if (f == "bilw") return Family::BiLW;
    throw ValidationError("unknown surface family '" + f + "'");
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::Minimal: return "minimal";
        case Family::Maximal: return "maximal";
        case Family::BrLW: return "brlw";
        case Family::BiLW: return "bilw";
    }
    return "minimal";
}

} // namespace

JobConfig parse_job_config(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("job config is not valid JSON: ") + e.what());
    }
    try {
        JobConfig cfg;
        if (j.value("format", "sdlw-job") != "sdlw-job")
            throw ValidationError("job config: unexpected format field");
        cfg.net = parse_net_spec(j.at("net").dump(), base_dir);
        const json& sj = j.at("surface");
        cfg.family = family_from_string(sj.at("family").get<std::string>());
        cfg.s = sj.value("s", 0.0);
        cfg.lambda = sj.value("lambda", 0.1);
        if (sj.contains("base_point")) {
            const auto bp = sj.at("base_point").get<std::vector<double>>();
            if (bp.size() != 4) throw ValidationError("base_point must have 4 components");
            cfg.base_point = {bp[0], bp[1], bp[2], bp[3]};
        }
        if (sj.contains("theta")) cfg.theta = sj.at("theta").get<std::vector<double>>();
        if (cfg.theta.empty()) cfg.theta = {0.0};
        if (j.contains("analyses")) cfg.analyses = j.at("analyses").get<std::vector<std::string>>();
        if (j.contains("lambda_sweep"))
            cfg.lambda_sweep = j.at("lambda_sweep").get<std::vector<double>>();
        if (j.contains("solver")) {
            cfg.solver.step = j.at("solver").value("step", cfg.solver.step);
            cfg.solver.error_budget = j.at("solver").value("error_budget", cfg.solver.error_budget);
        }
        if (j.contains("tolerances")) cfg.net_tol = j.at("tolerances").value("net", cfg.net_tol);
        if (j.contains("output")) {
            const json& oj = j.at("output");
            if (oj.contains("formats")) cfg.formats = oj.at("formats").get<std::vector<std::string>>();
            cfg.stem = oj.value("stem", cfg.stem);
        }
        return cfg;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("job config: missing or mistyped field: ") + e.what());
    }
}

std::string job_config_to_json(const JobConfig& cfg) {
    json j;
    j["format"] = "sdlw-job";
    j["version"] = 1;
    j["net"] = json::parse(net_spec_to_json(cfg.net));
    j["surface"] = {{"family", family_to_string(cfg.family)},
                    {"s", cfg.s},
                    {"lambda", cfg.lambda},
                    {"base_point", {cfg.base_point[0], cfg.base_point[1], cfg.base_point[2],
                                    cfg.base_point[3]}},
                    {"theta", cfg.theta}};
    j["analyses"] = cfg.analyses;
    j["lambda_sweep"] = cfg.lambda_sweep;
    j["solver"] = {{"step", cfg.solver.step}, {"error_budget", cfg.solver.error_budget}};
    j["tolerances"] = {{"net", cfg.net_tol}};
    j["output"] = {{"formats", cfg.formats}, {"stem", cfg.stem}};
    return j.dump(2);
}

void validate_job(const JobConfig& cfg, const HoloNet& net) {
    cfg.net.grid.validate();
    const NetReport rep = validate_net(net, cfg.net_tol);
    if (!rep.pass) throw ValidationError("net is not semi-discrete isothermic: " + rep.message);
    if (cfg.family == Family::BrLW || cfg.family == Family::BiLW) {
        if (cfg.lambda == 0.0) throw ValidationError("lambda must be nonzero");
        for (double s : net.sigma)
            if (std::abs(1.0 - cfg.lambda * s) < 1e-12)
                throw ValidationError("1 - lambda*sigma = 0 on a gap (frame system precondition)");
        for (int i = 0; i < net.grid.num_strips(); ++i)
            for (int j = 0; j < net.grid.num_samples(); ++j)
                if (std::abs(1.0 + cfg.s * std::norm(net.g(i, j))) < 1e-10)
                    throw ValidationError("genericity 1 + s|g|^2 = 0 at a grid point");
    }
}

void write_curvature_csv(const SemiDiscreteSurface& S, const std::string& path) {
    std::ostringstream out;
    out << "k,t,kappa,kappa01,K_mixed,H_mixed,K_closed,H_closed,flags\n";
    for (int i = 0; i < S.num_strips(); ++i) {
        for (int j = 0; j < S.num_samples(); ++j) {
            std::string flags;
            out << S.grid.k(i) << "," << fmt(S.grid.t(j)) << ",";
            if (!S.vertex_valid(i, j)) {
                out << "nan,nan,nan,nan,nan,nan,invalid\n";
                continue;
            }
            const PrincipalCurvature k0 = fit_principal_smooth(S, i, j);
            out << fmt(k0.kappa) << ",";
            if (k0.kappa.infinite) flags += "kappa_inf;";
            const bool has_edge = i + 1 < S.num_strips() && S.edge_valid(i, j);
            if (!has_edge) {
                out << "nan,nan,nan,nan,nan," << flags << "no_edge\n";
                continue;
            }
            const PrincipalCurvature k01 = fit_principal_edge(S, i, j);
            const PrincipalCurvature k1 = fit_principal_smooth(S, i + 1, j);
            out << fmt(k01.kappa) << ",";
            if (k01.kappa.infinite) flags += "kappa01_inf;";
            std::string mixed = "nan,nan", closed = "nan,nan";
            try {
                const EdgeCurvatures mc = gauss_mean_mixed(S, i, j);
                mixed = fmt(mc.K) + "," + fmt(mc.H);
            } catch (const Error&) {
                flags += "mixed_degenerate;";
            }
            try {
                const EdgeCurvatures cc = gauss_mean_closed(k0.kappa, k1.kappa, k01.kappa);
                closed = fmt(cc.K) + "," + fmt(cc.H);
            } catch (const Error&) {
                flags += "closed_degenerate;";
            }
            out << mixed << "," << closed << "," << flags << "\n";
        }
    }
    write_text_atomic(path, out.str());
}

namespace {

std::string dir_str(DirClass d) {
    switch (d) {
        case DirClass::None: return "none";
        case DirClass::FPS: return "fps";
        case DirClass::S: return "s";
    }
    return "none";
}

std::string refine_str(FpRefinement r) {
    switch (r) {
        case FpRefinement::FP: return "fp";
        case FpRefinement::S: return "s";
        case FpRefinement::NotApplicable: return "na";
    }
    return "na";
}

} // namespace

void write_singularity_csv(const SemiDiscreteSurface& S, const HoloNet* net,
                           const std::string& path) {
    const bool lorentz = S.ambient.lorentzian();
    const bool is_maximal = S.provenance.family == Family::Maximal;
    const bool is_cmc1 = S.provenance.family == Family::BiLW && S.provenance.s == -1.0;

    std::ostringstream out;
    out << "k,t,discrete_dir,smooth_dir,refine,edge_spacelike_left,edge_spacelike_right,"
           "circle_test,condition_C\n";
    for (int i = 0; i < S.num_strips(); ++i) {
        for (int j = 0; j < S.num_samples(); ++j) {
            out << S.grid.k(i) << "," << fmt(S.grid.t(j)) << ",";
            if (!S.vertex_valid(i, j)) {
                out << "invalid,invalid,na,na,na,na,na\n";
                continue;
            }
            const VertexClass vc = classify_vertex(S, i, j);
            // parallels of minimal/maximal surfaces: every FPS point is S
            const bool def54 = S.provenance.parallel &&
                               (S.provenance.family == Family::Minimal ||
                                S.provenance.family == Family::Maximal);
            auto label = [&](DirClass d) {
                return def54 && d == DirClass::FPS ? std::string("s") : dir_str(d);
            };
            out << label(vc.discrete_dir) << "," << label(vc.smooth_dir) << ","
                << refine_str(refine_fp_vs_s(S, i, j)) << ",";
            auto edge_col = [&](int ei) -> std::string {
                if (!lorentz || ei < 0 || ei + 1 >= S.num_strips() || !S.edge_valid(ei, j))
                    return "na";
                try {
                    return singular_edge_lorentz(S, ei, j,
                                                 is_cmc1 ? PlaneVariant::CMC1Plane
                                                         : PlaneVariant::TangentPlane)
                                   .spacelike
                               ? "1"
                               : "0";
                } catch (const Error&) {
                    return "na";
                }
            };
            out << edge_col(i - 1) << "," << edge_col(i) << ",";
            std::string circle = "na", cond_c = "na";
            if (net && i + 1 < S.num_strips()) {
                try {
                    if (is_maximal) circle = maximal_edge_circle_test(*net, i, j) ? "1" : "0";
                    if (is_cmc1) {
                        circle = cmc1_edge_circle_test(*net, i, j) ? "1" : "0";
                        cond_c = cmc1_condition_c(*net, i, j) ? "1" : "0";
                    }
                } catch (const Error&) {
                }
            }
            out << circle << "," << cond_c << "\n";
        }
    }
    write_text_atomic(path, out.str());
}

namespace {

struct ThetaArtifacts {
    SemiDiscreteSurface surface;
    double s_theta = 0;
};

void summarize_counts(const SemiDiscreteSurface& S, std::ostringstream& sum) {
    int fps_d = 0, s_d = 0, fps_s = 0, s_s = 0, singular_edges = 0, edges = 0;
    for (int i = 0; i < S.num_strips(); ++i)
        for (int j = 0; j < S.num_samples(); ++j) {
            if (!S.vertex_valid(i, j)) continue;
            const VertexClass vc = classify_vertex(S, i, j);
            fps_d += vc.discrete_dir == DirClass::FPS;
            s_d += vc.discrete_dir == DirClass::S;
            fps_s += vc.smooth_dir == DirClass::FPS;
            s_s += vc.smooth_dir == DirClass::S;
        }
    if (S.ambient.lorentzian()) {
        for (int i = 0; i + 1 < S.num_strips(); ++i)
            for (int j = 0; j < S.num_samples(); ++j) {
                if (!S.edge_valid(i, j)) continue;
                try {
                    ++edges;
                    singular_edges +=
                        singular_edge_lorentz(S, i, j, PlaneVariant::TangentPlane).singular;
                } catch (const Error&) {
                }
            }
        sum << "  singular edges (Def. 5.5): " << singular_edges << " / " << edges << "\n";
    } else {
        sum << "  singular edges: not applicable (Riemannian ambient)\n";
    }
    sum << "  FPS vertices discrete/smooth: " << fps_d << "/" << fps_s
        << ", S vertices discrete/smooth: " << s_d << "/" << s_s << "\n";
}

} // namespace

JobResult run_job(const JobConfig& cfg, const std::string& out_dir) {
    JobResult res;
    std::ostringstream sum;
    try {
        std::filesystem::create_directories(out_dir);
        const HoloNet net = realize_net(cfg.net, cfg.solver);
        validate_job(cfg, net);
        const NetReport nrep = validate_net(net, cfg.net_tol);
        sum << "net: " << (nrep.pass ? "pass" : "FAIL")
            << ", factorization residual " << fmt(nrep.max_residual) << "\n";

        const bool flat = cfg.family == Family::Minimal || cfg.family == Family::Maximal;
        const bool curvature_on = std::count(cfg.analyses.begin(), cfg.analyses.end(), "curvature");
        const bool singularity_on =
            std::count(cfg.analyses.begin(), cfg.analyses.end(), "singularity");
        const bool weingarten_on =
            std::count(cfg.analyses.begin(), cfg.analyses.end(), "weingarten");
        const bool want_obj = std::count(cfg.formats.begin(), cfg.formats.end(), "obj");
        const bool want_ply = std::count(cfg.formats.begin(), cfg.formats.end(), "ply");
        const bool want_csv = std::count(cfg.formats.begin(), cfg.formats.end(), "csv");

        SemiDiscreteSurface base;
        LiftedPair pair;
        if (flat) {
            base = build_minmax(net, cfg.family == Family::Minimal ? 1 : -1, cfg.base_point,
                                cfg.solver);
        } else {
            const FrameField F = integrate_frame(net, cfg.lambda, Mat2C::identity(), cfg.solver);
            pair = lift_surface(F, LWParams{cfg.s});
            base = cfg.family == Family::BrLW ? pair.x : pair.n;
        }

        for (size_t ti = 0; ti < cfg.theta.size(); ++ti) {
            const double theta = cfg.theta[ti];
            ThetaArtifacts art;
            if (flat) {
                art.surface = parallel_flat(base, theta);
                art.s_theta = 0;
            } else {
                const LiftedPair pt = parallel_curved(pair, theta);
                art.surface = cfg.family == Family::BrLW ? pt.x : pt.n;
                art.s_theta = std::exp(-2.0 * theta) * cfg.s;
            }
            const std::string stem =
                out_dir + "/" + cfg.stem + "_theta" + std::to_string(ti);
            sum << "theta[" << ti << "] = " << fmt(theta) << "\n";
            if (!flat) sum << "  s_theta = " << fmt(art.s_theta) << "\n";

            if (want_obj) {
                const MeshData mesh = build_mesh(art.surface);
                write_obj(mesh, stem + ".obj");
                res.artifacts.push_back(stem + ".obj");
                sum << "  mesh: " << mesh.vertices.size() << " vertices, "
                    << mesh.triangles.size() << " triangles\n";
            }
            if (want_ply) {
                MeshData mesh = build_mesh(art.surface);
                Grid<double> Kattr(art.surface.num_strips(), art.surface.num_samples(),
                                   std::nan(""));
                Grid<double> kattr(art.surface.num_strips(), art.surface.num_samples(),
                                   std::nan(""));
                for (int i = 0; i < art.surface.num_strips(); ++i)
                    for (int j = 0; j < art.surface.num_samples(); ++j) {
                        if (!art.surface.vertex_valid(i, j)) continue;
                        const PrincipalCurvature k0 = fit_principal_smooth(art.surface, i, j);
                        if (!k0.kappa.infinite) kattr(i, j) = k0.kappa.value;
                        if (i + 1 < art.surface.num_strips() && art.surface.edge_valid(i, j)) {
                            try {
                                const EdgeCurvatures ec = gauss_mean_mixed(art.surface, i, j);
                                if (!ec.K.infinite) Kattr(i, j) = ec.K.value;
                            } catch (const Error&) {
                            }
                        }
                    }
                add_vertex_attribute(mesh, "K", Kattr);
                add_vertex_attribute(mesh, "kappa", kattr);
                write_ply(mesh, stem + ".ply");
                res.artifacts.push_back(stem + ".ply");
            }
            if (want_csv && curvature_on) {
                write_curvature_csv(art.surface, stem + "_curvature.csv");
                res.artifacts.push_back(stem + "_curvature.csv");
            }
            if (want_csv && singularity_on) {
                write_singularity_csv(art.surface, &net, stem + "_singularity.csv");
                res.artifacts.push_back(stem + "_singularity.csv");
                summarize_counts(art.surface, sum);
            }
            if (weingarten_on) {
                WeingartenRelation rel = WeingartenRelation::minmax();
                if (flat && theta != 0.0) rel = WeingartenRelation::parallel_flat(theta);
                if (cfg.family == Family::BrLW) rel = WeingartenRelation::brlw(art.s_theta);
                if (cfg.family == Family::BiLW) rel = WeingartenRelation::bilw(art.s_theta);
                const WeingartenReport wr = weingarten_residual(art.surface, rel);
                sum << "  weingarten residual: " << fmt(wr.max_residual) << " over "
                    << wr.evaluated << " edges (" << wr.skipped << " skipped)\n";
            }
        }

        auto list_violations = [&](const AdjacencyReport& ar) {
            for (const auto& [vi, vj] : ar.violations)
                sum << "  violation at k=" << cfg.net.grid.k(vi) << ", t=" << fmt(cfg.net.grid.t(vj))
                    << "\n";
        };
        if (singularity_on && cfg.family == Family::Maximal) {
            const AdjacencyReport ar = check_maximal_adjacency(base);
            sum << "thm 5.3 adjacency: " << ar.violations.size() << " violations over "
                << ar.singular_vertices << " singular vertices, smooth finite-kappa FPS: "
                << ar.smooth_finite_fps << (ar.violations.empty() ? " (pass)" : " (FAIL)") << "\n";
            list_violations(ar);
        }
        if (singularity_on && cfg.family == Family::BiLW && cfg.s == -1.0) {
            const AdjacencyReport ar = check_cmc1_adjacency(net, cfg.lambda_sweep, cfg.solver);
            sum << "thm 5.5 adjacency over lambda sweep: " << ar.violations.size()
                << " violations over " << ar.singular_vertices << " singular vertices"
                << (ar.violations.empty() ? " (pass)" : " (FAIL)") << "\n";
            list_violations(ar);
        }

        res.summary = sum.str();
        write_text_atomic(out_dir + "/" + cfg.stem + "_summary.txt", res.summary);
        res.artifacts.push_back(out_dir + "/" + cfg.stem + "_summary.txt");
        res.exit_code = 0;
        return res;
    } catch (const ValidationError& e) {
        res.exit_code = 2;
        res.summary = std::string("validation failure: ") + e.what() + "\n";
        return res;
    } catch (const Error& e) {
        res.exit_code = 3;
        res.summary = std::string("numerical failure: ") + e.what() + "\n";
        return res;
    }
}

} // namespace sdlw
