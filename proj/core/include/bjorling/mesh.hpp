// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bjorling/strip.hpp"
#include "bjorling/vec3.hpp"

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace bjorling {

struct SurfaceMesh {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals; // parallel to vertices
    std::vector<std::array<int, 3>> triangles;
    std::vector<std::pair<std::string, std::string>> metadata; // written as header comments
};

struct MeshOptions {
    /// Close the s-seam of periodic strips whose drift vanishes. Strips
    /// that translate across the seam (helicoidal data) are never stitched.
    bool stitch_seam = true;
    double min_area = 1e-16;
};

/// Grid quads split into two triangles along the diagonal chosen by the
/// parity of j + i. Vertex (j, i) is index i * N + j; positions and normals
/// are copied from the strip unchanged. Throws MeshError on a degenerate
/// triangle, naming its grid location.
SurfaceMesh strip_to_mesh(const SolutionStrip& strip, const MeshOptions& opts = {});

/// Mesh over the fundamental domain s in [s0, s0 + T): column sigma = T/h
/// is identified with column 0 with t reversed, the quotient by
/// (s, t) -> (s + T, -t). With reverse_t = false the columns are glued
/// straight, which yields an annulus (used as a negative control).
/// Throws MeshError if T is not grid-aligned, leaves the strip, or the
/// involution residual |psi(s + T, -t) - psi(s, t)| exceeds `threshold`.
SurfaceMesh mobius_glue(const SolutionStrip& strip, double T, bool reverse_t = true, double threshold = 1e-6,
                        const MeshOptions& opts = {});

/// Number of closed loops formed by edges used by exactly one triangle.
int boundary_loop_count(const SurfaceMesh& mesh);

/// True when the triangle windings can be made consistent across every
/// interior edge (propagation from a seed triangle finds no conflict).
bool is_orientable(const SurfaceMesh& mesh);

/// V - E + F over the vertices referenced by triangles.
int euler_characteristic(const SurfaceMesh& mesh);

/// ASCII OBJ: `v`, `vn` and `f a//a b//b c//c` lines, 1-based, 17 digits.
/// Throws MeshError for an empty mesh or on I/O failure.
void write_obj(const SurfaceMesh& mesh, const std::filesystem::path& path);
std::string to_obj(const SurfaceMesh& mesh);

/// ASCII PLY with double vertex positions and normals.
void write_ply(const SurfaceMesh& mesh, const std::filesystem::path& path);
std::string to_ply(const SurfaceMesh& mesh);

} // namespace bjorling
