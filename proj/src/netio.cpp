#include "sdlw/netio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sdlw {

using nlohmann::json;

namespace {

GridSpec grid_from_json(const json& j) {
    GridSpec g;
    g.k_min = j.at("k_min").get<int>();
    g.k_max = j.at("k_max").get<int>();
    g.t_min = j.at("t_min").get<double>();
    g.t_max = j.at("t_max").get<double>();
    g.t_step = j.at("t_step").get<double>();
    g.validate();
    return g;
}

json grid_to_json(const GridSpec& g) {
    return json{{"k_min", g.k_min}, {"k_max", g.k_max}, {"t_min", g.t_min},
                {"t_max", g.t_max}, {"t_step", g.t_step}};
}

} // namespace

NetSpec parse_net_spec(const std::string& json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("net spec is not valid JSON: ") + e.what());
    }
    try {
        NetSpec spec;
        if (j.value("format", "sdlw-net") != "sdlw-net")
            throw ValidationError("net spec: unexpected format field");
        spec.grid = grid_from_json(j.at("grid"));
        const std::string gen = j.at("generator").get<std::string>();
        if (gen == "linear") {
            spec.generator = NetSpec::Generator::Linear;
            const json& lin = j.at("linear");
            spec.linear_a = lin.at("a").get<double>();
            spec.linear_b = lin.at("b").get<double>();
            if (spec.linear_a == 0 || spec.linear_b == 0)
                throw ValidationError("net spec: linear generator needs a != 0 and b != 0");
        } else if (gen == "propagated") {
            spec.generator = NetSpec::Generator::Propagated;
            const json& pj = j.at("propagated");
            spec.linear_a = pj.at("base").at("a").get<double>();
            spec.linear_b = pj.at("base").at("b").get<double>();
            spec.sigma = pj.at("sigma").get<std::vector<double>>();
            for (const auto& sv : pj.at("seeds")) {
                spec.seeds.emplace_back(sv.at(0).get<double>(), sv.at(1).get<double>());
            }
            if ((int)spec.sigma.size() != spec.grid.num_gaps() ||
                (int)spec.seeds.size() != spec.grid.num_gaps())
                throw ValidationError("net spec: propagated generator needs one sigma and seed per gap");
        } else if (gen == "tabulated") {
            spec.generator = NetSpec::Generator::Tabulated;
            std::string p = j.at("tabulated").at("csv").get<std::string>();
            if (!base_dir.empty() && !p.empty() && p[0] != '/') p = base_dir + "/" + p;
            spec.csv_path = p;
        } else {
            throw ValidationError("net spec: unknown generator '" + gen + "'");
        }
        return spec;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("net spec: missing or mistyped field: ") + e.what());
    }
}

std::string net_spec_to_json(const NetSpec& spec) {
    json j;
    j["format"] = "sdlw-net";
    j["version"] = 1;
    j["grid"] = grid_to_json(spec.grid);
    switch (spec.generator) {
        case NetSpec::Generator::Linear:
            j["generator"] = "linear";
            j["linear"] = {{"a", spec.linear_a}, {"b", spec.linear_b}};
            break;
        case NetSpec::Generator::Propagated: {
            j["generator"] = "propagated";
            json seeds = json::array();
            for (cplx s : spec.seeds) seeds.push_back({s.real(), s.imag()});
            j["propagated"] = {{"base", {{"a", spec.linear_a}, {"b", spec.linear_b}}},
                               {"sigma", spec.sigma},
                               {"seeds", seeds}};
            break;
        }
        case NetSpec::Generator::Tabulated:
            j["generator"] = "tabulated";
            j["tabulated"] = {{"csv", spec.csv_path}};
            break;
    }
    return j.dump(2);
}

HoloNet realize_net(const NetSpec& spec, const ODESettings& solver) {
    switch (spec.generator) {
        case NetSpec::Generator::Linear:
            return make_linear_net(spec.linear_a, spec.linear_b, spec.grid);
        case NetSpec::Generator::Propagated: {
            const int nt = spec.grid.num_samples();
            Strip base;
            base.g.resize((size_t)nt);
            base.dg.resize((size_t)nt);
            for (int j = 0; j < nt; ++j) {
                base.g[(size_t)j] = cplx(spec.linear_a * spec.grid.k_min,
                                         spec.linear_b * spec.grid.t(j));
                base.dg[(size_t)j] = cplx(0, spec.linear_b);
            }
            const std::vector<double> tau((size_t)nt, -spec.linear_b * spec.linear_b);
            return propagate_net(spec.grid, base, tau, spec.sigma, spec.seeds, solver);
        }
        case NetSpec::Generator::Tabulated:
            return read_net_csv(spec.csv_path, spec.grid);
    }
    throw ValidationError("unreachable generator kind");
}

void write_net_csv(const HoloNet& net, const std::string& path) {
    std::ostringstream out;
    out.precision(17);
    out << "k,t,re_g,im_g,re_dg,im_dg,tau,sigma\n";
    const int nk = net.grid.num_strips(), nt = net.grid.num_samples();
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            const double sigma = i < nk - 1 ? net.sigma[(size_t)i] : 0.0;
            out << net.grid.k(i) << "," << net.grid.t(j) << "," << net.g(i, j).real() << ","
                << net.g(i, j).imag() << "," << net.dg(i, j).real() << "," << net.dg(i, j).imag()
                << "," << net.tau[(size_t)j] << "," << sigma << "\n";
        }
    const std::string tmp = path + ".partial";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw IOError("cannot open " + tmp);
        f << out.str();
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw IOError("rename failed for " + path);
}

HoloNet read_net_csv(const std::string& path, const GridSpec& grid) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path);
    const int nk = grid.num_strips(), nt = grid.num_samples();
    HoloNet net;
    net.grid = grid;
    net.g = Grid<cplx>(nk, nt);
    net.dg = Grid<cplx>(nk, nt);
    net.tau.assign((size_t)nt, 0.0);
    net.sigma.assign((size_t)std::max(0, nk - 1), 0.0);

    Grid<std::uint8_t> seen(nk, nt, 0);
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream is(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(is, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != 8) throw ValidationError("tabulated net: expected 8 CSV columns");
        const int i = (int)std::lround(row[0]) - grid.k_min;
        const int j = (int)std::lround((row[1] - grid.t_min) / grid.t_step);
        if (i < 0 || i >= nk || j < 0 || j >= nt)
            throw ValidationError("tabulated net: sample outside the grid");
        net.g(i, j) = cplx(row[2], row[3]);
        net.dg(i, j) = cplx(row[4], row[5]);
        if (i == 0) net.tau[(size_t)j] = row[6];
        if (i < nk - 1) net.sigma[(size_t)i] = row[7];
        seen(i, j) = 1;
    }
    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j)
            if (!seen(i, j)) throw ValidationError("tabulated net: missing samples");
    return net;
}

} // namespace sdlw
