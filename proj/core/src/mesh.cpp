// SPDX-License-Identifier: Apache-2.0
#include "bjorling/mesh.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/validators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace bjorling {

namespace {

/// Appends the two triangles of the quad a-b-c-d (counter-clockwise in the
/// (s, t) plane), split along the diagonal selected by `parity`.
void add_quad(SurfaceMesh& m, int a, int b, int c, int d, int parity, const MeshOptions& opts, double s, double t)
{
    std::array<std::array<int, 3>, 2> tris;
    if (parity % 2 == 0) {
        tris = {{{a, b, c}, {a, c, d}}};
    } else {
        tris = {{{a, b, d}, {b, c, d}}};
    }
    for (const auto& tri : tris) {
        const Vec3& p0 = m.vertices[static_cast<std::size_t>(tri[0])];
        const Vec3& p1 = m.vertices[static_cast<std::size_t>(tri[1])];
        const Vec3& p2 = m.vertices[static_cast<std::size_t>(tri[2])];
        const double area = 0.5 * norm(cross(p1 - p0, p2 - p0));
        if (!(area >= opts.min_area)) {
            std::ostringstream msg;
            msg << "degenerate triangle in the quad at (s, t) = (" << s << ", " << t << "), area " << area;
            throw MeshError(msg.str());
        }
        m.triangles.push_back(tri);
    }
}

bool closes_up(const SolutionStrip& strip)
{
    double scale = 1.0;
    for (const Vec3& p : strip.pos) {
        scale = std::max(scale, norm(p));
    }
    return norm(strip.drift) <= 1e-9 * scale;
}

using Edge = std::pair<int, int>;

Edge edge_key(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

std::map<Edge, int> edge_use(const SurfaceMesh& m)
{
    std::map<Edge, int> use;
    for (const auto& tri : m.triangles) {
        for (int k = 0; k < 3; ++k) {
            ++use[edge_key(tri[static_cast<std::size_t>(k)], tri[static_cast<std::size_t>((k + 1) % 3)])];
        }
    }
    return use;
}

void check_writable(const SurfaceMesh& m)
{
    if (m.vertices.empty() || m.triangles.empty()) {
        throw MeshError("refusing to write an empty mesh");
    }
    if (m.normals.size() != m.vertices.size()) {
        throw MeshError("mesh normals do not match its vertices");
    }
}

void write_text(const std::string& text, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw MeshError("cannot open '" + path.string() + "' for writing");
    }
    out << text;
    out.flush();
    if (!out) {
        throw MeshError("failed writing '" + path.string() + "'");
    }
}

std::string format_triple(const char* tag, const Vec3& v)
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %.17g %.17g %.17g\n", tag, v.x, v.y, v.z);
    return buf;
}

} // namespace

SurfaceMesh strip_to_mesh(const SolutionStrip& strip, const MeshOptions& opts)
{
    const int N = strip.cols();
    const int R = strip.rows();
    if (N < 2 || R < 2) {
        throw MeshError("strip needs at least two columns and two rows");
    }
    SurfaceMesh m;
    m.vertices = strip.pos;
    m.normals = strip.normal;
    const bool stitch = opts.stitch_seam && strip.grid.periodic && closes_up(strip);
    const int quads_per_row = stitch ? N : N - 1;
    auto id = [&](int j, int i) { return i * N + (j % N); };
    for (int i = 0; i + 1 < R; ++i) {
        for (int j = 0; j < quads_per_row; ++j) {
            add_quad(m, id(j, i), id(j + 1, i), id(j + 1, i + 1), id(j, i + 1), j + i, opts, strip.grid.point(j),
                     strip.t[static_cast<std::size_t>(i)]);
        }
    }
    return m;
}

SurfaceMesh mobius_glue(const SolutionStrip& strip, double T, bool reverse_t, double threshold,
                        const MeshOptions& opts)
{
    int sigma = 0;
    CheckReport involution;
    try {
        sigma = grid_shift(strip.grid, T);
        involution = mobius_involution_check(strip, T, threshold);
    } catch (const DataError& e) {
        throw MeshError(e.what());
    }
    if (!involution.pass) {
        std::ostringstream msg;
        msg << "refusing to glue: involution residual " << involution.max_residual << " exceeds " << threshold;
        throw MeshError(msg.str());
    }
    const int N = strip.cols();
    const int R = strip.rows();
    if (sigma < 2 || sigma > N) {
        throw MeshError("gluing shift must span 2 .. N grid columns");
    }
    SurfaceMesh m;
    for (int i = 0; i < R; ++i) {
        for (int j = 0; j < sigma; ++j) {
            m.vertices.push_back(strip.pos[strip.index(j, i)]);
            m.normals.push_back(strip.normal[strip.index(j, i)]);
        }
    }
    auto id = [&](int j, int i) {
        if (j == sigma) {
            return (reverse_t ? R - 1 - i : i) * sigma;
        }
        return i * sigma + j;
    };
    for (int i = 0; i + 1 < R; ++i) {
        for (int j = 0; j < sigma; ++j) {
            add_quad(m, id(j, i), id(j + 1, i), id(j + 1, i + 1), id(j, i + 1), j + i, opts, strip.grid.point(j),
                     strip.t[static_cast<std::size_t>(i)]);
        }
    }
    return m;
}

int boundary_loop_count(const SurfaceMesh& mesh)
{
    std::vector<int> parent(mesh.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    std::set<int> touched;
    for (const auto& [edge, count] : edge_use(mesh)) {
        if (count == 1) {
            touched.insert(edge.first);
            touched.insert(edge.second);
            parent[static_cast<std::size_t>(find(edge.first))] = find(edge.second);
        }
    }
    std::set<int> roots;
    for (int v : touched) {
        roots.insert(find(v));
    }
    return static_cast<int>(roots.size());
}

bool is_orientable(const SurfaceMesh& mesh)
{
    // For every edge, the triangles using it and the direction in which each
    // traverses it (+1 when from the smaller to the larger index).
    std::map<Edge, std::vector<std::pair<int, int>>> users;
    for (std::size_t f = 0; f < mesh.triangles.size(); ++f) {
        const auto& tri = mesh.triangles[f];
        for (int k = 0; k < 3; ++k) {
            const int a = tri[static_cast<std::size_t>(k)];
            const int b = tri[static_cast<std::size_t>((k + 1) % 3)];
            users[edge_key(a, b)].emplace_back(static_cast<int>(f), a < b ? 1 : -1);
        }
    }
    std::vector<std::vector<std::pair<int, int>>> neighbours(mesh.triangles.size());
    for (const auto& [edge, list] : users) {
        if (list.size() > 2) {
            return false;
        }
        if (list.size() == 2) {
            // Consistent windings traverse a shared edge in opposite directions,
            // so the relative flip is +1 when the raw directions differ.
            const int rel = list[0].second == list[1].second ? -1 : 1;
            neighbours[static_cast<std::size_t>(list[0].first)].emplace_back(list[1].first, rel);
            neighbours[static_cast<std::size_t>(list[1].first)].emplace_back(list[0].first, rel);
        }
    }
    std::vector<int> orient(mesh.triangles.size(), 0);
    for (std::size_t seed = 0; seed < orient.size(); ++seed) {
        if (orient[seed] != 0) {
            continue;
        }
        orient[seed] = 1;
        std::queue<int> queue;
        queue.push(static_cast<int>(seed));
        while (!queue.empty()) {
            const int f = queue.front();
            queue.pop();
            for (const auto& [g, rel] : neighbours[static_cast<std::size_t>(f)]) {
                const int want = orient[static_cast<std::size_t>(f)] * rel;
                int& o = orient[static_cast<std::size_t>(g)];
                if (o == 0) {
                    o = want;
                    queue.push(g);
                } else if (o != want) {
                    return false;
                }
            }
        }
    }
    return true;
}

int euler_characteristic(const SurfaceMesh& mesh)
{
    std::set<int> used;
    for (const auto& tri : mesh.triangles) {
        used.insert(tri.begin(), tri.end());
    }
    const auto edges = edge_use(mesh);
    return static_cast<int>(used.size()) - static_cast<int>(edges.size()) + static_cast<int>(mesh.triangles.size());
}

std::string to_obj(const SurfaceMesh& mesh)
{
    check_writable(mesh);
    std::string out = "# bjorling surface mesh\n";
    for (const auto& [key, value] : mesh.metadata) {
        out += "# " + key + ": " + value + "\n";
    }
    for (const Vec3& v : mesh.vertices) {
        out += format_triple("v", v);
    }
    for (const Vec3& n : mesh.normals) {
        out += format_triple("vn", n);
    }
    for (const auto& tri : mesh.triangles) {
        const int a = tri[0] + 1;
        const int b = tri[1] + 1;
        const int c = tri[2] + 1;
        out += "f " + std::to_string(a) + "//" + std::to_string(a) + " " + std::to_string(b) + "//" +
               std::to_string(b) + " " + std::to_string(c) + "//" + std::to_string(c) + "\n";
    }
    return out;
}

std::string to_ply(const SurfaceMesh& mesh)
{
    check_writable(mesh);
    std::string out = "ply\nformat ascii 1.0\n";
    for (const auto& [key, value] : mesh.metadata) {
        out += "comment " + key + ": " + value + "\n";
    }
    out += "element vertex " + std::to_string(mesh.vertices.size()) + "\n";
    for (const char* p : {"x", "y", "z", "nx", "ny", "nz"}) {
        out += std::string("property double ") + p + "\n";
    }
    out += "element face " + std::to_string(mesh.triangles.size()) + "\n";
    out += "property list uchar int vertex_indices\nend_header\n";
    char buf[256];
    for (std::size_t k = 0; k < mesh.vertices.size(); ++k) {
        const Vec3& v = mesh.vertices[k];
        const Vec3& n = mesh.normals[k];
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g\n", v.x, v.y, v.z, n.x, n.y, n.z);
        out += buf;
    }
    for (const auto& tri : mesh.triangles) {
        out += "3 " + std::to_string(tri[0]) + " " + std::to_string(tri[1]) + " " + std::to_string(tri[2]) + "\n";
    }
    return out;
}

void write_obj(const SurfaceMesh& mesh, const std::filesystem::path& path) { write_text(to_obj(mesh), path); }

void write_ply(const SurfaceMesh& mesh, const std::filesystem::path& path) { write_text(to_ply(mesh), path); }

} // namespace bjorling
