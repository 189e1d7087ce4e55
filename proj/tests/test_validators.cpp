// SPDX-License-Identifier: Apache-2.0
#include "bjorling/errors.hpp"
#include "bjorling/solver_ck.hpp"
#include "bjorling/validators.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace bjorling;

namespace {

constexpr double kPi = std::numbers::pi;

SolutionStrip solve(const BjorlingData& d, const char* h, const SGrid& g, double delta, int M_t = 10)
{
    const auto c = expand_coefficients(d, PrescribedH::parse(h), g, 16);
    return evaluate_strip(c, delta, M_t, EvalOptions{true});
}

BjorlingData circle_data() { return make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1"}, 0.0, 2.0 * kPi); }

BjorlingData moebius_data()
{
    return make_data({"cos(2*s)/2", "sin(2*s)/2", "0"}, {"cos(s)*cos(2*s)", "cos(s)*sin(2*s)", "sin(s)"}, 0.0,
                     2.0 * kPi);
}

} // namespace

TEST_CASE("checks on the helicoid")
{
    const auto d = make_data({"0", "0", "s"}, {"cos(s)", "sin(s)", "0"}, 0.0, 2.0 * kPi);
    const auto strip = solve(d, "0", SGrid{0.0, 2.0 * kPi, 128, true}, 0.3);
    const auto h = PrescribedH::parse("0");
    CHECK(conformality_check(strip).pass);
    CHECK(mean_curvature_check(strip, h).pass);
    CHECK(pde_residual_check(strip, h).pass);

    const auto conf = conformality_check(strip);
    CHECK(conf.name == "conformality");
    CHECK(conf.threshold == kConformalityThreshold);

    // A wrong H is noticed by both curvature checks.
    const auto wrong = PrescribedH::parse("0.5");
    const auto mc = mean_curvature_check(strip, wrong);
    CHECK_FALSE(mc.pass);
    CHECK(mc.max_residual == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_FALSE(pde_residual_check(strip, wrong).pass);

    CHECK(format_report(conf).rfind("check=conformality max=", 0) == 0);
    CHECK(format_report(conf).find("pass=true") != std::string::npos);
}

TEST_CASE("a NaN anywhere fails the check")
{
    const auto strip0 = solve(circle_data(), "z", SGrid{0.0, 2.0 * kPi, 64, true}, 0.2);
    auto strip = strip0;
    strip.d_s[strip.index(5, 3)].x = std::numeric_limits<double>::quiet_NaN();
    const auto r = conformality_check(strip);
    CHECK_FALSE(r.pass);
    CHECK(std::isnan(r.max_residual));
    CHECK(format_report(r).find("pass=false") != std::string::npos);
}

TEST_CASE("pde residual needs at least two rows on each side")
{
    const auto strip = solve(circle_data(), "z", SGrid{0.0, 2.0 * kPi, 64, true}, 0.2, 1);
    CHECK_THROWS_AS(pde_residual_check(strip, PrescribedH::parse("z")), DataError);
}

TEST_CASE("wing-like strip: curvature and rotational symmetry")
{
    const SGrid g{0.0, 2.0 * kPi, 256, true};
    const auto strip = solve(circle_data(), "z", g, 0.25, 20);
    const auto h = PrescribedH::parse("z");
    CHECK(conformality_check(strip).pass);
    CHECK(mean_curvature_check(strip, h).pass);
    CHECK(pde_residual_check(strip, h).pass);
    const auto sym = symmetry_check(strip, kPi / 2.0, Vec3{}, 64);
    CHECK(sym.pass);
    CHECK(sym.max_residual <= 1e-8);
    // Rotating by the wrong angle is a real failure.
    CHECK_FALSE(symmetry_check(strip, kPi / 3.0, Vec3{}, 64).pass);
}

TEST_CASE("H-helicoid translation invariance")
{
    const auto d = make_data({"0", "0", "s"}, {"cos(s)", "sin(s)", "0"}, 0.0, 4.0 * kPi);
    const SGrid g{0.0, 4.0 * kPi, 256, true};
    const auto strip = solve(d, "z", g, 0.2, 20);
    const auto sym = symmetry_check(strip, 0.0, Vec3{0.0, 0.0, 2.0 * kPi}, 128);
    CHECK(sym.pass);
    CHECK(sym.max_residual <= 1e-8);
    CHECK_FALSE(symmetry_check(strip, 0.0, Vec3{0.0, 0.0, kPi}, 128).pass);
}

TEST_CASE("Moebius involution and normal antipodality")
{
    const SGrid g{0.0, 2.0 * kPi, 256, true};
    const auto strip = solve(moebius_data(), "z", g, 0.1, 10);
    const auto inv = mobius_involution_check(strip, kPi);
    const auto anti = normal_antipodality_check(strip, kPi);
    CHECK(inv.pass);
    CHECK(anti.pass);
    CHECK(inv.max_residual <= 1e-6);
    CHECK(anti.max_residual <= 1e-6);

    SUBCASE("misaligned shift")
    {
        CHECK_THROWS_AS(mobius_involution_check(strip, 1.0), DataError);
        CHECK_THROWS_AS(normal_antipodality_check(strip, 1.0), DataError);
        CHECK_THROWS_AS(grid_shift(g, 1.0), DataError);
        CHECK(grid_shift(g, kPi) == 128);
    }
}

TEST_CASE("negative control: wing-like data are not a Moebius strip")
{
    const SGrid g{0.0, 2.0 * kPi, 256, true};
    const auto strip = solve(circle_data(), "z", g, 0.2, 10);
    CHECK_FALSE(mobius_involution_check(strip, kPi).pass);
    CHECK_FALSE(normal_antipodality_check(strip, kPi).pass);
}

TEST_CASE("reference and strip difference checks")
{
    const SGrid g{0.0, 2.0 * kPi, 64, true};
    const auto d = make_data({"0", "0", "s"}, {"cos(s)", "sin(s)", "0"}, 0.0, 2.0 * kPi);
    const auto strip = solve(d, "0", g, 0.3);
    const auto ref = reference_check(
        "helicoid", strip,
        [](double s, double t) { return Vec3{std::cos(s) * std::sinh(t), std::sin(s) * std::sinh(t), s}; }, 1e-8);
    CHECK(ref.pass);
    CHECK(ref.name == "helicoid");

    auto shifted = strip;
    for (auto& p : shifted.pos) {
        p.z += 1e-3;
    }
    const auto diff = strip_difference_check("shift", strip, shifted, 1e-4);
    CHECK_FALSE(diff.pass);
    CHECK(diff.max_residual == doctest::Approx(1e-3).epsilon(1e-6));

    const auto other = solve(d, "0", g, 0.3, 5);
    CHECK_THROWS_AS(strip_difference_check("rows", strip, other, 1e-4), DataError);
}
