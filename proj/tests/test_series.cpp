// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/series.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

using bjorling::RealSeries;

namespace {

double max_abs(const RealSeries& s)
{
    double m = 0.0;
    for (double c : s.coefficients()) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

/// Max coefficient difference relative to the size of `expected`.
double relative_gap(const RealSeries& got, const RealSeries& expected)
{
    double gap = 0.0;
    for (int k = 0; k <= expected.order(); ++k) {
        gap = std::max(gap, std::abs(got[k] - expected[k]));
    }
    return gap / std::max(1.0, max_abs(expected));
}

RealSeries random_series(std::mt19937_64& rng, int order, double c0_min, double c0_max)
{
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> lead(c0_min, c0_max);
    RealSeries s(order);
    s[0] = lead(rng);
    for (int k = 1; k <= order; ++k) {
        s[k] = coeff(rng);
    }
    return s;
}

double factorial(int k)
{
    double f = 1.0;
    for (int j = 2; j <= k; ++j) {
        f *= j;
    }
    return f;
}

} // namespace

TEST_CASE("Cauchy product and division by hand")
{
    const RealSeries one_plus_t = RealSeries::from_coefficients({1.0, 1.0, 0.0, 0.0});
    const RealSeries sq = one_plus_t * one_plus_t;
    CHECK(sq[0] == 1.0);
    CHECK(sq[1] == 2.0);
    CHECK(sq[2] == 1.0);
    CHECK(sq[3] == 0.0);

    // 1 / (1 - t) = 1 + t + t^2 + t^3
    const RealSeries geo = RealSeries(3, 1.0) / RealSeries::from_coefficients({1.0, -1.0, 0.0, 0.0});
    for (int k = 0; k <= 3; ++k) {
        CHECK(geo[k] == 1.0);
    }
    CHECK(geo(0.5) == doctest::Approx(1.875));
}

TEST_CASE("Series preconditions")
{
    const RealSeries t = RealSeries::variable(4);
    CHECK_THROWS_AS(RealSeries(4, 1.0) / t, bjorling::EvalError);
    CHECK_THROWS_AS(sqrt(t), bjorling::EvalError);
    CHECK_THROWS_AS(sqrt(RealSeries(4, -1.0)), bjorling::EvalError);
    CHECK_THROWS_AS(t + RealSeries(3), std::invalid_argument);
    CHECK_THROWS_AS(RealSeries::from_coefficients({}), std::invalid_argument);
}

TEST_CASE("1000 randomized truncated-series identities hold to 1e-12 relative")
{
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> order_dist(1, 12);
    double worst = 0.0;
    int checked = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int K = order_dist(rng);
        const RealSeries a = random_series(rng, K, -1.0, 1.0);
        const RealSeries b = random_series(rng, K, 1.5, 3.0);
        const RealSeries one(K, 1.0);
        double gap = 0.0;
        switch (trial % 7) {
        case 0: // (a b) / b = a
            gap = relative_gap((a * b) / b, a);
            break;
        case 1: // sqrt(b)^2 = b
            gap = relative_gap(sqrt(b) * sqrt(b), b);
            break;
        case 2: // exp(a) exp(-a) = 1
            gap = relative_gap(exp(a) * exp(-a), one);
            break;
        case 3: // sin^2 + cos^2 = 1
            gap = relative_gap(sin(a) * sin(a) + cos(a) * cos(a), one);
            break;
        case 4: // cosh^2 - sinh^2 = 1
            gap = relative_gap(cosh(a) * cosh(a) - sinh(a) * sinh(a), one);
            break;
        case 5: { // sin(a0 + v) = sin a0 cos v + cos a0 sin v, with v = a - a0
            RealSeries v = a;
            v[0] = 0.0;
            const RealSeries expected = std::sin(a[0]) * cos(v) + std::cos(a[0]) * sin(v);
            gap = relative_gap(sin(a), expected);
            break;
        }
        default: { // a^5 by repeated products
            const RealSeries expected = a * a * a * a * a;
            gap = relative_gap(pow(a, 5), expected);
            break;
        }
        }
        worst = std::max(worst, gap);
        ++checked;
    }
    CHECK(checked == 1000);
    CHECK(worst <= 1e-12);
}

TEST_CASE("elementary-function coefficients match finite-difference derivatives up to order 6")
{
    struct Case {
        const char* name;
        std::function<RealSeries(const RealSeries&)> series;
        std::function<double(double)> f;
        double t0;
    };
    const Case cases[] = {
        {"exp", [](const RealSeries& u) { return exp(u); }, [](double x) { return std::exp(x); }, 0.3},
        {"sin", [](const RealSeries& u) { return sin(u); }, [](double x) { return std::sin(x); }, 0.3},
        {"cos", [](const RealSeries& u) { return cos(u); }, [](double x) { return std::cos(x); }, 0.3},
        {"sinh", [](const RealSeries& u) { return sinh(u); }, [](double x) { return std::sinh(x); }, 0.3},
        {"cosh", [](const RealSeries& u) { return cosh(u); }, [](double x) { return std::cosh(x); }, 0.3},
        {"sqrt", [](const RealSeries& u) { return sqrt(u); }, [](double x) { return std::sqrt(x); }, 3.0},
        {"exp(sin)", [](const RealSeries& u) { return exp(sin(u)); },
         [](double x) { return std::exp(std::sin(x)); }, 0.3},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const RealSeries s = c.series(RealSeries::variable(6, c.t0));
        for (int k = 1; k <= 6; ++k) {
            CAPTURE(k);
            const double fd = oracle::fd_derivative(c.f, c.t0, k, 0.1, 12);
            const double got = factorial(k) * s[k];
            CHECK(std::abs(got - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
        }
    }
}
