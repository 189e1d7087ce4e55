// SPDX-License-Identifier: Apache-2.0
#include "bjorling/errors.hpp"
#include "bjorling/mesh.hpp"
#include "bjorling/solver_ck.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

using namespace bjorling;

namespace {

constexpr double kPi = std::numbers::pi;

/// Hand-built strip: a cylinder on a periodic grid, a flat sheet otherwise.
SolutionStrip toy_strip(int N, int M_t, bool periodic)
{
    SolutionStrip strip;
    const SGrid g = periodic ? SGrid{0.0, 2.0 * kPi, N, true} : SGrid{0.0, 1.0, N, false};
    strip.allocate(g, 0.5, M_t);
    for (int i = 0; i < strip.rows(); ++i) {
        const double t = strip.t[static_cast<std::size_t>(i)];
        for (int j = 0; j < N; ++j) {
            const double s = g.point(j);
            const auto k = strip.index(j, i);
            if (periodic) {
                strip.pos[k] = {std::cos(s), std::sin(s), t};
                strip.normal[k] = {std::cos(s), std::sin(s), 0.0};
            } else {
                strip.pos[k] = {s, t, 0.0};
                strip.normal[k] = {0.0, 0.0, 1.0};
            }
        }
    }
    return strip;
}

SolutionStrip moebius_strip(int N, int M_t)
{
    const auto d = make_data({"cos(2*s)/2", "sin(2*s)/2", "0"}, {"cos(s)*cos(2*s)", "cos(s)*sin(2*s)", "sin(s)"},
                             0.0, 2.0 * kPi);
    const auto c = expand_coefficients(d, PrescribedH::parse("z"), SGrid{0.0, 2.0 * kPi, N, true}, 16);
    return evaluate_strip(c, 0.1, M_t, EvalOptions{true});
}

/// Minimal OBJ reader for `v`, `vn` and `f a//a b//b c//c` lines.
SurfaceMesh read_obj(const std::string& text)
{
    SurfaceMesh m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v" || tag == "vn") {
            Vec3 p;
            ls >> p.x >> p.y >> p.z;
            (tag == "v" ? m.vertices : m.normals).push_back(p);
        } else if (tag == "f") {
            std::array<int, 3> tri{};
            for (int& v : tri) {
                std::string corner;
                ls >> corner;
                v = std::stoi(corner.substr(0, corner.find('/'))) - 1;
            }
            m.triangles.push_back(tri);
        }
    }
    return m;
}

} // namespace

TEST_CASE("open strip: N = 4, M_t = 1")
{
    const auto m = strip_to_mesh(toy_strip(4, 1, false));
    CHECK(m.vertices.size() == 12);
    CHECK(m.normals.size() == 12);
    CHECK(m.triangles.size() == 12);
    CHECK(boundary_loop_count(m) == 1);
    CHECK(is_orientable(m));
    CHECK(euler_characteristic(m) == 1);
}

TEST_CASE("periodic strip closes the seam")
{
    const auto strip = toy_strip(8, 1, true);
    const auto m = strip_to_mesh(strip);
    CHECK(m.triangles.size() == 32);
    CHECK(boundary_loop_count(m) == 2);
    CHECK(is_orientable(m));
    CHECK(euler_characteristic(m) == 0);

    const auto open = strip_to_mesh(strip, MeshOptions{false});
    CHECK(open.triangles.size() == 28);
    CHECK(boundary_loop_count(open) == 1);

    auto drifting = strip;
    drifting.drift = {0.0, 0.0, 1.0};
    CHECK(strip_to_mesh(drifting).triangles.size() == 28);
}

TEST_CASE("quad diagonals alternate with the parity of j + i")
{
    const auto m = strip_to_mesh(toy_strip(4, 1, false));
    // Quad (0, 0) is split along 0-5, its neighbour (1, 0) along 2-5.
    const auto has_edge = [&](int a, int b) {
        for (const auto& tri : m.triangles) {
            int hits = 0;
            for (int v : tri) {
                hits += v == a || v == b;
            }
            if (hits == 2) {
                return true;
            }
        }
        return false;
    };
    CHECK(has_edge(0, 5));
    CHECK_FALSE(has_edge(1, 4));
    CHECK(has_edge(2, 5));
    CHECK_FALSE(has_edge(1, 6));
}

TEST_CASE("Moebius glue")
{
    const auto strip = moebius_strip(64, 4);
    const auto m = mobius_glue(strip, kPi);
    CHECK(m.vertices.size() == 32 * 9);
    CHECK(m.triangles.size() == 2 * 32 * 8);
    CHECK(boundary_loop_count(m) == 1);
    CHECK_FALSE(is_orientable(m));
    CHECK(euler_characteristic(m) == 0);

    SUBCASE("straight gluing gives an annulus")
    {
        const auto annulus = mobius_glue(strip, kPi, false);
        CHECK(boundary_loop_count(annulus) == 2);
        CHECK(is_orientable(annulus));
        CHECK(euler_characteristic(annulus) == 0);
    }
    SUBCASE("misaligned length")
    {
        CHECK_THROWS_AS(mobius_glue(strip, 1.0), MeshError);
    }
}

TEST_CASE("Moebius glue refuses data without the involution")
{
    const auto d = make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1"}, 0.0, 2.0 * kPi);
    const auto c = expand_coefficients(d, PrescribedH::parse("z"), SGrid{0.0, 2.0 * kPi, 64, true}, 16);
    const auto strip = evaluate_strip(c, 0.1, 4, EvalOptions{true});
    CHECK_THROWS_AS(mobius_glue(strip, kPi), MeshError);
}

TEST_CASE("OBJ round trip")
{
    const auto strip = moebius_strip(32, 2);
    auto m = strip_to_mesh(strip);
    m.metadata.emplace_back("name", "moebius");
    const std::string text = to_obj(m);
    CHECK(text.find("# name: moebius\n") != std::string::npos);
    const auto back = read_obj(text);
    REQUIRE(back.vertices.size() == m.vertices.size());
    REQUIRE(back.normals.size() == m.normals.size());
    REQUIRE(back.triangles.size() == m.triangles.size());
    bool exact = true;
    for (std::size_t k = 0; k < m.vertices.size(); ++k) {
        exact = exact && back.vertices[k].x == m.vertices[k].x && back.vertices[k].y == m.vertices[k].y &&
                back.vertices[k].z == m.vertices[k].z && back.normals[k].z == m.normals[k].z;
    }
    CHECK(exact);
    CHECK(back.triangles == m.triangles);

    const auto path = std::filesystem::temp_directory_path() / "bjorling_test_mesh.obj";
    write_obj(m, path);
    std::ifstream in(path);
    std::stringstream file;
    file << in.rdbuf();
    CHECK(file.str() == text);
    std::filesystem::remove(path);
}

TEST_CASE("PLY header")
{
    const auto m = strip_to_mesh(toy_strip(4, 1, false));
    const std::string text = to_ply(m);
    CHECK(text.rfind("ply\nformat ascii 1.0\n", 0) == 0);
    CHECK(text.find("element vertex 12\n") != std::string::npos);
    CHECK(text.find("element face 12\n") != std::string::npos);
    CHECK(text.find("property double nz\n") != std::string::npos);
    CHECK(text.find("property list uchar int vertex_indices\nend_header\n") != std::string::npos);
    CHECK(text.find("\n3 0 1 5\n") != std::string::npos);
}

TEST_CASE("mesh errors")
{
    CHECK_THROWS_AS(to_obj(SurfaceMesh{}), MeshError);
    CHECK_THROWS_AS(to_ply(SurfaceMesh{}), MeshError);
    CHECK_THROWS_AS(write_obj(strip_to_mesh(toy_strip(4, 1, false)), "/nonexistent/dir/out.obj"), MeshError);

    auto strip = toy_strip(4, 1, false);
    strip.pos[strip.index(1, 0)] = strip.pos[strip.index(0, 0)];
    try {
        strip_to_mesh(strip);
        FAIL("degenerate quad accepted");
    } catch (const MeshError& e) {
        CHECK(std::string(e.what()).find("(s, t) = (0, -0.5)") != std::string::npos);
    }
}
