// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/solver_ck.hpp"
#include "bjorling/solver_fd.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bjorling;

namespace {

constexpr double kPi = std::numbers::pi;

BjorlingData helicoid_data() { return make_data({"0", "0", "s"}, {"cos(s)", "sin(s)", "0"}, 0.0, 2.0 * kPi); }
BjorlingData circle_data() { return make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1"}, 0.0, 2.0 * kPi); }

/// Max |fd - ck| over rows with |t| <= t_max, CK evaluated on the FD rows.
double gap_to_series(const SolutionStrip& fd, const BjorlingData& d, const PrescribedH& h, double t_max)
{
    const auto c = expand_coefficients(d, h, fd.grid, 16);
    const auto ck = evaluate_strip(c, fd.delta, fd.M_t, EvalOptions{true});
    double gap = 0.0;
    for (int i = 0; i < fd.rows(); ++i) {
        if (std::abs(fd.t[static_cast<std::size_t>(i)]) > t_max + 1e-12) {
            continue;
        }
        for (int j = 0; j < fd.cols(); ++j) {
            gap = std::max(gap, norm(fd.pos[fd.index(j, i)] - ck.pos[ck.index(j, i)]));
        }
    }
    return gap;
}

} // namespace

TEST_CASE("helicoid: 200 steps of 1e-3 stay within 1e-4 of the closed form")
{
    const SGrid g{0.0, 2.0 * kPi, 128, true};
    const auto strip = march(helicoid_data(), PrescribedH::parse("0"), g, FdConfig{1e-3, 200});
    CHECK(strip.delta == doctest::Approx(0.2));
    double err = 0.0;
    for (int i : {0, strip.rows() - 1}) {
        for (int j = 0; j < g.N; ++j) {
            const Vec3 exact = oracle::helicoid(g.point(j), strip.t[static_cast<std::size_t>(i)]);
            err = std::max(err, norm(strip.pos[strip.index(j, i)] - exact));
        }
    }
    CHECK(err <= 1e-4);
}

TEST_CASE("wing-like: finite differences agree with the series solver")
{
    const SGrid g{0.0, 2.0 * kPi, 256, true};
    const auto h = PrescribedH::parse("z");
    const auto strip = march(circle_data(), h, g, FdConfig{1e-3, 100, 0.6});
    CHECK(gap_to_series(strip, circle_data(), h, 0.1) <= 1e-4);
}

TEST_CASE("second-order convergence in dt")
{
    const SGrid g{0.0, 2.0 * kPi, 64, true};
    const auto h = PrescribedH::parse("z");
    double prev = 0.0;
    for (int halving = 0; halving < 3; ++halving) {
        const double dt = 4e-3 / (1 << halving);
        const int steps = static_cast<int>(std::lround(0.1 / dt));
        const auto strip = march(circle_data(), h, g, FdConfig{dt, steps});
        const double err = gap_to_series(strip, circle_data(), h, 0.1);
        if (halving > 0) {
            const double ratio = prev / err;
            CAPTURE(dt);
            CHECK(ratio >= 3.5);
            CHECK(ratio <= 4.5);
        }
        prev = err;
    }
}

TEST_CASE("initial conditions are exact")
{
    const SGrid g{0.0, 2.0 * kPi, 64, true};
    const auto d = circle_data();
    const auto strip = march(d, PrescribedH::parse("z"), g, FdConfig{1e-3, 10});
    for (int j = 0; j < g.N; ++j) {
        CHECK(norm(strip.pos[strip.index(j, strip.center_row())] - d.beta_at(g.point(j))) == 0.0);
    }
}

TEST_CASE("configuration errors and blow-up")
{
    const SGrid g{0.0, 2.0 * kPi, 64, true};
    const auto h = PrescribedH::parse("z");
    CHECK_THROWS_AS(march(circle_data(), h, g, FdConfig{0.0, 10}), DataError);
    CHECK_THROWS_AS(march(circle_data(), h, g, FdConfig{1e-3, 1}), DataError);
    CHECK_THROWS_AS(march(circle_data(), h, g, FdConfig{1e-3, 10, 1.5}), DataError);
    // Marching an elliptic problem is unstable; a long run with rough data
    // and no filtering must be caught, not returned.
    const auto rough = make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1"}, 0.0, 2.0 * kPi);
    const SGrid fine{0.0, 2.0 * kPi, 256, true};
    CHECK_THROWS_AS(march(rough, h, fine, FdConfig{0.05, 4000, 1.0}), SolverError);
}
