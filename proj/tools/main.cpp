#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "sdlw/job.hpp"
#include "sdlw/minmax.hpp"
#include "sdlw/projection.hpp"
#include "sdlw/singularity.hpp"
#include "sdlw/spaceform.hpp"

namespace {

using namespace sdlw;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    std::string seed_strips;
    std::string lambda_sweep;
    std::vector<std::string> tol;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "job configuration (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed-strips", args.seed_strips,
                    "CSV of per-gap seeds (k,re,im) for propagated nets");
    cmd->add_option("--lambda-sweep", args.lambda_sweep, "comma-separated lambda values");
    cmd->add_option("--tol", args.tol, "tolerance override NAME=VALUE (net, step, error_budget)");
}

JobConfig load_config(const CommonArgs& args) {
    std::ifstream in(args.config_path);
    if (!in) throw ValidationError("cannot open config " + args.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string base_dir = std::filesystem::path(args.config_path).parent_path().string();
    JobConfig cfg = parse_job_config(ss.str(), base_dir);

    if (!args.seed_strips.empty()) {
        std::ifstream seeds(args.seed_strips);
        if (!seeds) throw ValidationError("cannot open seed file " + args.seed_strips);
        cfg.net.seeds.clear();
        std::string line;
        while (std::getline(seeds, line)) {
            if (line.empty() || line[0] == '#' || line[0] == 'k') continue;
            std::istringstream is(line);
            std::string cell;
            std::vector<double> row;
            while (std::getline(is, cell, ',')) row.push_back(std::stod(cell));
            if (row.size() < 3) throw ValidationError("seed rows need k,re,im columns");
            cfg.net.seeds.emplace_back(row[1], row[2]);
        }
    }
    if (!args.lambda_sweep.empty()) {
        cfg.lambda_sweep.clear();
        std::istringstream is(args.lambda_sweep);
        std::string cell;
        while (std::getline(is, cell, ',')) cfg.lambda_sweep.push_back(std::stod(cell));
        if (cfg.lambda_sweep.empty()) throw ValidationError("empty lambda sweep");
    }
    for (const std::string& kv : args.tol) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ValidationError("--tol expects NAME=VALUE");
        const std::string name = kv.substr(0, eq);
        const double value = std::stod(kv.substr(eq + 1));
        if (name == "net")
            cfg.net_tol = value;
        else if (name == "step")
            cfg.solver.step = value;
        else if (name == "error_budget")
            cfg.solver.error_budget = value;
        else
            throw ValidationError("unknown tolerance '" + name + "'");
    }
    return cfg;
}

int run_with(const CommonArgs& args, const std::vector<std::string>& analyses,
             const std::vector<std::string>& formats) {
    JobConfig cfg;
    try {
        cfg = load_config(args);
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    if (!analyses.empty()) cfg.analyses = analyses;
    if (!formats.empty()) cfg.formats = formats;
    const JobResult res = run_job(cfg, args.out_dir);
    std::fputs(res.summary.c_str(), res.exit_code == 0 ? stdout : stderr);
    if (res.exit_code == 0)
        for (const std::string& a : res.artifacts) std::printf("wrote %s\n", a.c_str());
    return res.exit_code;
}

int selftest() {
    int failed = 0;
    auto check = [&](const char* what, bool ok, double value) {
        std::printf("%s %s (%.3e)\n", ok ? "PASS" : "FAIL", what, value);
        failed += !ok;
    };
    try {
        const GridSpec grid{-2, 2, -0.45, 0.45, 0.05};
        const HoloNet net = make_linear_net(1, 1, grid);
        const NetReport nrep = validate_net(net, 1e-10);
        check("linear net factorization", nrep.pass, nrep.max_residual);

        ODESettings solver;
        solver.step = grid.t_step;
        const SemiDiscreteSurface S = build_minmax(net, 1, {0, 0, 0, 0}, solver);
        const WeingartenReport h = weingarten_residual(S, WeingartenRelation::minmax());
        check("minimal surface mean curvature", h.max_residual < 1e-6, h.max_residual);

        const FrameField F = integrate_frame(net, 0.1, Mat2C::identity(), solver);
        const LiftedPair pair = lift_surface(F, LWParams{0.5});
        double worst = 0;
        const AmbientMetric mink = AmbientMetric::minkowski();
        for (int i = 0; i < pair.x.num_strips(); ++i)
            for (int j = 0; j < pair.x.num_samples(); ++j)
                worst = std::max(worst, std::abs(inner(pair.x.x(i, j), pair.x.x(i, j), mink) + 1));
        check("BrLW quadric constraint", worst < 1e-8, worst);
        const WeingartenReport w = weingarten_residual(pair.x, WeingartenRelation::brlw(0.5));
        check("BrLW Weingarten relation", w.max_residual < 1e-6, w.max_residual);

        const GridSpec sweep_grid{-2, 2, -0.45, 0.45, 0.1};
        const HoloNet net2 = make_linear_net(1, 1, sweep_grid);
        ODESettings solver2;
        solver2.step = sweep_grid.t_step;
        const AdjacencyReport ar = check_cmc1_adjacency(net2, {1e-2, -1e-2}, solver2);
        check("CMC1 adjacency (Thm 5.5)", ar.violations.empty() && ar.singular_vertices > 0,
              (double)ar.singular_vertices);

        double proj_worst = 0;
        for (double a : {-2.0, 0.0, 1.5})
            for (double b : {-1.0, 0.5}) {
                const double z0 = std::sqrt(1 + a * a + b * b);
                const auto p = project_ambient({a, b, 0, z0}, AmbientMetric::h3());
                proj_worst = std::max(proj_worst, p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            }
        check("H3 projection inside the unit ball", proj_worst < 1.0, proj_worst);
    } catch (const Error& e) {
        std::fprintf(stderr, "FAIL selftest aborted: %s\n", e.what());
        return 1;
    }
    std::printf(failed == 0 ? "selftest passed\n" : "selftest FAILED (%d)\n", failed);
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semi-discrete linear Weingarten surfaces: construction, curvature and "
                 "singularity analysis"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* generate = app.add_subcommand("generate", "build the surface family and export meshes");
    add_common(generate, args);
    auto* analyze =
        app.add_subcommand("analyze", "run curvature/singularity analyses and write reports");
    add_common(analyze, args);
    auto* parallel =
        app.add_subcommand("parallel", "build the parallel family with meshes and reports");
    add_common(parallel, args);
    auto* exportc = app.add_subcommand("export", "export meshes only");
    add_common(exportc, args);
    app.add_subcommand("selftest", "run built-in consistency checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return run_with(args, {"weingarten"}, {"obj", "ply"});
        if (analyze->parsed())
            return run_with(args, {"curvature", "singularity", "weingarten"}, {"csv"});
        if (parallel->parsed())
            return run_with(args, {"curvature", "singularity", "weingarten"}, {});
        if (exportc->parsed()) return run_with(args, {"none"}, {"obj", "ply"});
        return selftest();
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "validation failure: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
}
