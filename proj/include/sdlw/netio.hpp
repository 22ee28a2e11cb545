#pragma once

#include <string>

#include "sdlw/holonet.hpp"

namespace sdlw {

/// Net document: JSON with a grid spec and one generator.
///
/// { "format": "sdlw-net", "version": 1,
///   "grid": {"k_min": -2, "k_max": 2, "t_min": -0.45, "t_max": 0.45, "t_step": 0.01},
///   "generator": "linear",            // or "propagated" | "tabulated"
///   "linear": {"a": 1.0, "b": 1.0},
///   "propagated": {"base": {"a": 1.0, "b": 1.0},
///                  "sigma": [...],                  // one per k-gap
///                  "seeds": [[re, im], ...]},       // g(k+1, t_min) per gap
///   "tabulated": {"csv": "net.csv"} }
///
/// Tabulated CSV columns: k, t, re_g, im_g, re_dg, im_dg, tau, sigma.
/// tau is read off the k_min rows; sigma(k) off any row of strip k (the
/// k_max rows' sigma is ignored).
struct NetSpec {
    enum class Generator { Linear, Propagated, Tabulated };

    Generator generator = Generator::Linear;
    GridSpec grid;
    double linear_a = 1.0, linear_b = 1.0;
    std::vector<double> sigma;  // propagated
    std::vector<cplx> seeds;    // propagated
    std::string csv_path;       // tabulated
};

NetSpec parse_net_spec(const std::string& json_text, const std::string& base_dir = "");
std::string net_spec_to_json(const NetSpec& spec);

HoloNet realize_net(const NetSpec& spec, const ODESettings& solver);

/// Writes the net's samples in the tabulated CSV schema.
void write_net_csv(const HoloNet& net, const std::string& path);
HoloNet read_net_csv(const std::string& path, const GridSpec& grid);

} // namespace sdlw
