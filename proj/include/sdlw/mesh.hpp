#pragma once

#include <array>
#include <string>
#include <vector>

#include "sdlw/surface.hpp"

namespace sdlw {

/// Triangulated view of a surface: quads split along the shorter projected
/// diagonal, faces only where all four corners are valid samples of the same
/// piece. Per-vertex attributes ride along for the PLY variant.
struct MeshData {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<int, 3>> triangles;
    std::vector<int> component;  // per triangle: strip-band/piece id
    std::vector<std::string> attr_names;
    std::vector<std::vector<double>> attrs;  // one column per name, NaN where flagged
    std::vector<int> grid_index;             // vertex -> i * nt + j
};

MeshData build_mesh(const SemiDiscreteSurface& S);

void add_vertex_attribute(MeshData& mesh, const std::string& name, const Grid<double>& values);

/// ASCII OBJ: positions and faces, pieces as separate groups.
void write_obj(const MeshData& mesh, const std::string& path);

/// ASCII PLY with per-vertex float attributes.
void write_ply(const MeshData& mesh, const std::string& path);

/// Parses positions back from an exported OBJ (round-trip checks).
std::vector<std::array<double, 3>> read_obj_vertices(const std::string& path);

} // namespace sdlw
