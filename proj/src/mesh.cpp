#include "sdlw/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sdlw/projection.hpp"

namespace sdlw {

namespace {

double dist2(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return dx * dx + dy * dy + dz * dz;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".partial";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IOError("cannot open " + tmp + " for writing");
        out << content;
        if (!out) throw IOError("write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IOError("rename failed for " + path);
}

} // namespace

MeshData build_mesh(const SemiDiscreteSurface& S) {
    const int nk = S.num_strips(), nt = S.num_samples();
    MeshData mesh;
    Grid<int> vid(nk, nt, -1);

    for (int i = 0; i < nk; ++i)
        for (int j = 0; j < nt; ++j) {
            if (!S.vertex_valid(i, j)) continue;
            AmbientMetric m = S.ambient;
            if ((m.tag == Submanifold::H3Plus || m.tag == Submanifold::H3Minus) && S.sheet(i, j) != 0)
                m.tag = S.sheet(i, j) > 0 ? Submanifold::H3Plus : Submanifold::H3Minus;
            vid(i, j) = (int)mesh.vertices.size();
            mesh.vertices.push_back(project_ambient(S.x(i, j), m));
            mesh.grid_index.push_back(i * nt + j);
        }

    int max_pieces = 1;
    for (int i = 0; i < nk; ++i) max_pieces = std::max(max_pieces, (int)S.crossings[(size_t)i].size() + 1);

    for (int i = 0; i + 1 < nk; ++i) {
        for (int j = 0; j + 1 < nt; ++j) {
            const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
            if (a < 0 || b < 0 || c < 0 || d < 0) continue;
            if (S.piece_of(i, j) != S.piece_of(i, j + 1)) continue;
            if (S.piece_of(i + 1, j) != S.piece_of(i + 1, j + 1)) continue;
            const int comp = i * max_pieces + S.piece_of(i, j);
            // split the quad along the shorter diagonal
            if (dist2(mesh.vertices[(size_t)a], mesh.vertices[(size_t)c]) <=
                dist2(mesh.vertices[(size_t)b], mesh.vertices[(size_t)d])) {
                mesh.triangles.push_back({a, b, c});
                mesh.triangles.push_back({a, c, d});
            } else {
                mesh.triangles.push_back({a, b, d});
                mesh.triangles.push_back({b, c, d});
            }
            mesh.component.push_back(comp);
            mesh.component.push_back(comp);
        }
    }
    return mesh;
}

void add_vertex_attribute(MeshData& mesh, const std::string& name, const Grid<double>& values) {
    std::vector<double> col(mesh.vertices.size());
    for (size_t v = 0; v < mesh.vertices.size(); ++v) {
        const int idx = mesh.grid_index[v];
        col[v] = values.data[(size_t)idx];
    }
    mesh.attr_names.push_back(name);
    mesh.attrs.push_back(std::move(col));
}

void write_obj(const MeshData& mesh, const std::string& path) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& v : mesh.vertices) out << "v " << v[0] << " " << v[1] << " " << v[2] << "\n";
    int cur = -1;
    for (size_t f = 0; f < mesh.triangles.size(); ++f) {
        if (mesh.component[f] != cur) {
            cur = mesh.component[f];
            out << "g piece_" << cur << "\n";
        }
        const auto& t = mesh.triangles[f];
        out << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
    }
    write_atomic(path, out.str());
}

void write_ply(const MeshData& mesh, const std::string& path) {
    std::ostringstream out;
    out.precision(17);
    out << "ply\nformat ascii 1.0\n";
    out << "element vertex " << mesh.vertices.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    for (const auto& name : mesh.attr_names) out << "property double " << name << "\n";
    out << "element face " << mesh.triangles.size() << "\n";
    out << "property list uchar int vertex_indices\n";
    out << "end_header\n";
    for (size_t v = 0; v < mesh.vertices.size(); ++v) {
        out << mesh.vertices[v][0] << " " << mesh.vertices[v][1] << " " << mesh.vertices[v][2];
        for (const auto& col : mesh.attrs) out << " " << col[v];
        out << "\n";
    }
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    write_atomic(path, out.str());
}

std::vector<std::array<double, 3>> read_obj_vertices(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot open " + path);
    std::vector<std::array<double, 3>> verts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) != 0) continue;
        std::istringstream is(line.substr(2));
        std::array<double, 3> v{};
        is >> v[0] >> v[1] >> v[2];
        verts.push_back(v);
    }
    return verts;
}

} // namespace sdlw
