// SPDX-License-Identifier: Apache-2.0
#include "bjorling/expr.hpp"
#include "bjorling/mesh.hpp"
#include "bjorling/series.hpp"
#include "bjorling/solver_ck.hpp"
#include "bjorling/solver_fd.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace bjorling;

namespace {

constexpr double kPi = std::numbers::pi;

BjorlingData circle_data() { return make_data({"cos(s)", "sin(s)", "0"}, {"0", "0", "1"}, 0.0, 2.0 * kPi); }

void BM_SeriesProduct(benchmark::State& state)
{
    const int K = static_cast<int>(state.range(0));
    RealSeries a(K, 1.0);
    RealSeries b(K, 2.0);
    for (int k = 1; k <= K; ++k) {
        a[k] = 1.0 / k;
        b[k] = -0.5 / k;
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}
BENCHMARK(BM_SeriesProduct)->Arg(8)->Arg(16)->Arg(32);

void BM_SeriesSqrtDivide(benchmark::State& state)
{
    const int K = static_cast<int>(state.range(0));
    RealSeries a(K, 2.0);
    for (int k = 1; k <= K; ++k) {
        a[k] = 1.0 / (k + 1);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(a / sqrt(a));
    }
}
BENCHMARK(BM_SeriesSqrtDivide)->Arg(16);

void BM_ParseExpression(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            parse_expr("cos(s/2)*(cos(s)+cos(3*s)) - 2*sin(s/2)*sin(s)", VarSet::curve()));
    }
}
BENCHMARK(BM_ParseExpression);

void BM_ExpandCoefficients(benchmark::State& state)
{
    const auto d = circle_data();
    const auto h = PrescribedH::parse("z");
    const SGrid g{0.0, 2.0 * kPi, static_cast<int>(state.range(0)), true};
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_coefficients(d, h, g, 16));
    }
}
BENCHMARK(BM_ExpandCoefficients)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EvaluateStrip(benchmark::State& state)
{
    const auto c = expand_coefficients(circle_data(), PrescribedH::parse("z"), SGrid{0.0, 2.0 * kPi, 256, true}, 16);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_strip(c, 0.25, 20));
    }
}
BENCHMARK(BM_EvaluateStrip)->Unit(benchmark::kMillisecond);

void BM_FdMarch(benchmark::State& state)
{
    const auto d = circle_data();
    const auto h = PrescribedH::parse("z");
    const SGrid g{0.0, 2.0 * kPi, 256, true};
    for (auto _ : state) {
        benchmark::DoNotOptimize(march(d, h, g, FdConfig{1e-3, 100, 0.6}));
    }
}
BENCHMARK(BM_FdMarch)->Unit(benchmark::kMillisecond);

void BM_StripToMesh(benchmark::State& state)
{
    const auto c = expand_coefficients(circle_data(), PrescribedH::parse("z"), SGrid{0.0, 2.0 * kPi, 256, true}, 16);
    const auto strip = evaluate_strip(c, 0.25, 20);
    for (auto _ : state) {
        benchmark::DoNotOptimize(to_obj(strip_to_mesh(strip)));
    }
}
BENCHMARK(BM_StripToMesh)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
