// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"
#include "config.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::initializer_list<const char*> args)
{
    std::vector<const char*> argv{"bjorling"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out;
    std::ostringstream err;
    const int code = bjorling::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Runs every test case inside a fresh scratch directory.
struct Scratch {
    fs::path dir;
    fs::path previous;
    Scratch()
    {
        setenv("BJORLING_GALLERY_DIR", BJORLING_TEST_GALLERY_DIR, 1);
        previous = fs::current_path();
        dir = fs::temp_directory_path() / ("bjorling_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        fs::current_path(dir);
    }
    ~Scratch()
    {
        fs::current_path(previous);
        fs::remove_all(dir);
    }
    fs::path write(const std::string& name, const std::string& text) const
    {
        std::ofstream(dir / name) << text;
        return dir / name;
    }
};

std::string preset(const std::string& name) { return slurp(fs::path(BJORLING_TEST_GALLERY_DIR) / (name + ".cfg")); }

} // namespace

TEST_CASE_FIXTURE(Scratch, "gallery listing and lookup")
{
    const auto list = run({"gallery"});
    CHECK(list.code == 0);
    for (const char* name : {"wing_like", "helicoid_h0", "moebius_translator", "bended_helicoid", "enneper_plane"}) {
        CHECK(list.out.find(name) != std::string::npos);
    }
    const auto one = run({"gallery", "wing_like"});
    CHECK(one.code == 0);
    CHECK(one.out == preset("wing_like"));

    const auto missing = run({"gallery", "nonexistent"});
    CHECK(missing.code == 2);
    CHECK(missing.err.find("wing_like") != std::string::npos);
}

TEST_CASE_FIXTURE(Scratch, "validate")
{
    const auto ok = run({"validate", "wing_like"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("check=data_length") != std::string::npos);
    CHECK(ok.out.find("check=periodicity") != std::string::npos);

    SUBCASE("uncorrected Moebius caption data")
    {
        std::string text = preset("moebius_translator");
        const auto pos = text.find("B.x = \"cos(s)*cos(2*s)\"");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, std::string("B.x = \"cos(s)*cos(2*s)\"").size(), "B.x = \"cos(s)*cos(s)\"");
        const auto pos_y = text.find("B.y = \"cos(s)*sin(2*s)\"");
        text.replace(pos_y, std::string("B.y = \"cos(s)*sin(2*s)\"").size(), "B.y = \"cos(s)*sin(s)\"");
        const auto r = run({"validate", write("caption.cfg", text).c_str()});
        CHECK(r.code == 1);
        CHECK(r.out.find("check=data_orthogonality") != std::string::npos);
    }
    SUBCASE("constant H on a Moebius run")
    {
        std::string text = preset("moebius_translator");
        text.replace(text.find("H = \"z\""), 7, "H = \"1\"");
        const auto r = run({"validate", write("const_h.cfg", text).c_str()});
        CHECK(r.code == 1);
        CHECK(r.out.find("check=antisymmetry") != std::string::npos);
    }
}

TEST_CASE_FIXTURE(Scratch, "input errors exit with 2")
{
    CHECK(run({"solve", "no_such_preset"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"solve", "wing_like", "--method", "rk4"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    std::string text = preset("wing_like");
    text.replace(text.find("B.z = \"1\""), 9, "B.z = \"(\"");
    const auto r = run({"validate", write("bad.cfg", text).c_str()});
    CHECK(r.code == 2);
    CHECK(r.err.find("B.z") != std::string::npos);

    CHECK(run({"solve", "wing_like", "--out", "mesh.stl"}).code == 2);
    CHECK(run({"oracle", "sphere"}).code == 2);
}

TEST_CASE_FIXTURE(Scratch, "solve writes a mesh and a deterministic report")
{
    const auto first = run({"solve", "wing_like", "--out", "a.obj"});
    REQUIRE(first.code == 0);
    CHECK(fs::exists("a.obj"));
    CHECK(fs::exists("a.report.txt"));
    const std::string report = slurp("a.report.txt");
    CHECK(report.find("name=wing_like") != std::string::npos);
    CHECK(report.find("check=translator") != std::string::npos);

    const auto second = run({"solve", "wing_like", "--out", "b.obj"});
    REQUIRE(second.code == 0);
    CHECK(slurp("a.obj") == slurp("b.obj"));
    std::string renamed = slurp("b.report.txt");
    renamed.replace(renamed.find("mesh=b.obj"), 10, "mesh=a.obj");
    CHECK(renamed == report);

    CHECK(run({"solve", "sphere", "--out", "sphere.ply"}).code == 0);
    CHECK(slurp("sphere.ply").rfind("ply\n", 0) == 0);
}

TEST_CASE_FIXTURE(Scratch, "Moebius solve reports a one-sided mesh")
{
    const auto r = run({"solve", "moebius_translator", "--out", "m.obj"});
    REQUIRE(r.code == 0);
    const std::string report = slurp("m.report.txt");
    CHECK(report.find("boundary_loops=1") != std::string::npos);
    CHECK(report.find("orientable=false") != std::string::npos);
}

TEST_CASE_FIXTURE(Scratch, "verify")
{
    CHECK(run({"verify", "helicoid_h0"}).code == 0);
    CHECK(run({"verify", "helicoid_h0", "--method", "fd"}).code == 0);

    SUBCASE("a strip far beyond the convergence radius fails")
    {
        std::string text = preset("wing_like");
        text.replace(text.find("delta = auto"), 12, "delta = 2.17\nallow_beyond_radius = true");
        text.replace(text.find("checks = "), std::string::npos, "checks = conformality, mean_curvature, pde_residual\n");
        const auto r = run({"verify", write("far.cfg", text).c_str()});
        CHECK(r.code == 1);
        CHECK(r.out.find("pass=false") != std::string::npos);
    }
    SUBCASE("an empty check list warns")
    {
        std::string text = preset("sphere");
        text.replace(text.find("checks = "), std::string::npos, "checks =\n");
        const auto r = run({"verify", write("none.cfg", text).c_str()});
        CHECK(r.code == 0);
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE_FIXTURE(Scratch, "oracle")
{
    const auto schwarz = run({"oracle", "helicoid_h0"});
    CHECK(schwarz.code == 0);
    CHECK(fs::exists("helicoid_h0.oracle.obj"));
    const auto wing = run({"oracle", "wing_like"});
    CHECK(wing.code == 0);
    CHECK(wing.out.find("min_radius") != std::string::npos);
}
