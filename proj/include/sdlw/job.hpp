#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdlw/holonet.hpp"
#include "sdlw/netio.hpp"
#include "sdlw/surface.hpp"

namespace sdlw {

/// One driver run: net + surface family + requested analyses + outputs.
///
/// { "format": "sdlw-job", "version": 1,
///   "net": { ...net spec... },
///   "surface": {"family": "minimal"|"maximal"|"brlw"|"bilw",
///               "s": 0.5, "lambda": 0.1,           // curved families
///               "base_point": [0,0,0,0],           // flat families
///               "theta": [0.0, 0.3]},              // parallel offsets, default [0]
///   "analyses": ["curvature", "singularity", "weingarten"],
///   "lambda_sweep": [0.01, -0.01, 0.001, -0.001],
///   "solver": {"step": 0.001, "error_budget": 1e-8},
///   "tolerances": {"net": 1e-8},
///   "output": {"formats": ["obj", "ply", "csv"], "stem": "surface"} }
struct JobConfig {
    NetSpec net;
    Family family = Family::Minimal;
    double s = 0;
    double lambda = 0.1;
    Vec4 base_point{0, 0, 0, 0};
    std::vector<double> theta{0.0};
    std::vector<std::string> analyses{"curvature", "singularity", "weingarten"};
    std::vector<double> lambda_sweep{1e-1, -1e-1, 1e-2, -1e-2, 1e-3, -1e-3, 1e-4, -1e-4};
    ODESettings solver;
    double net_tol = 1e-8;
    std::vector<std::string> formats{"obj", "ply", "csv"};
    std::string stem = "surface";
};

JobConfig parse_job_config(const std::string& json_text, const std::string& base_dir = "");
std::string job_config_to_json(const JobConfig& cfg);

/// Validates every documented precondition before any computation; throws
/// ValidationError naming the violated one.
void validate_job(const JobConfig& cfg, const HoloNet& net);

/// Curvature table: k,t,kappa,kappa01,K_mixed,H_mixed,K_closed,H_closed,flags.
void write_curvature_csv(const SemiDiscreteSurface& S, const std::string& path);

/// Singularity table: k,t,discrete_dir,smooth_dir,refine,edge_spacelike_left,
/// edge_spacelike_right,circle_test,condition_C. Columns that do not apply to
/// the surface family are written as "na".
void write_singularity_csv(const SemiDiscreteSurface& S, const HoloNet* net,
                           const std::string& path);

struct JobResult {
    int exit_code = 0;  // 0 ok, 2 validation failure, 3 numerical failure
    std::vector<std::string> artifacts;
    std::string summary;
};

/// Runs the whole job; deterministic outputs for a fixed config. Partial
/// outputs stay under a ".partial" suffix when a stage fails.
JobResult run_job(const JobConfig& cfg, const std::string& out_dir);

} // namespace sdlw
