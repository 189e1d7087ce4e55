// SPDX-License-Identifier: Apache-2.0
#include "bjorling/solver_fd.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/parallel.hpp"
#include "bjorling/solver_ck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace bjorling {

namespace {

using Row = std::vector<Vec3>;

void check_config(const FdConfig& cfg)
{
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw DataError("FD time step must be positive");
    }
    if (cfg.n_steps < 2) {
        throw DataError("FD step count must be at least 2");
    }
    if (!(cfg.filter_cutoff > 0.0 && cfg.filter_cutoff <= 1.0)) {
        throw DataError("filter cutoff must lie in (0, 1]");
    }
}

/// One leapfrog step in the direction `dir` (+1 or -1 in t): given rows at
/// steps n-2, n-1, n (ordered away from the axis), return row n+1.
Row leapfrog(const Row& older, const Row& prev, const Row& cur, double dir, const PrescribedH& h, const SGrid& g,
             const Vec3& drift, double dt, int step)
{
    const Row ds = s_derivative(cur, g, 1, drift);
    const Row dss = s_derivative(cur, g, 2, drift);
    Row next(cur.size());
    parallel_for(cur.size(), [&](std::size_t j) {
        const Vec3 pt = dir * (3.0 * cur[j] - 4.0 * prev[j] + older[j]) / (2.0 * dt);
        const Vec3 n = cross(ds[j], pt);
        const double len = norm(n);
        if (!(len >= 1e-12)) {
            std::ostringstream msg;
            msg << "degenerate normal at step " << step << ", s = " << g.point(static_cast<int>(j));
            throw SolverError(msg.str());
        }
        const Vec3 acc = 2.0 * h(n / len) * n - dss[j];
        next[j] = 2.0 * cur[j] - prev[j] + dt * dt * acc;
        if (!std::isfinite(next[j].x) || !std::isfinite(next[j].y) || !std::isfinite(next[j].z)) {
            std::ostringstream msg;
            msg << "FD blow-up at step " << step << " (t = " << dir * (step + 1) * dt << ")";
            throw SolverError(msg.str());
        }
    });
    return next;
}

} // namespace

SolutionStrip march(const BjorlingData& d, const PrescribedH& h, const SGrid& g, const FdConfig& cfg)
{
    check_config(cfg);
    g.check();
    const CoeffTensor seed = expand_coefficients(d, h, g, 2);
    const int M = cfg.n_steps;
    const double dt = cfg.dt;
    const bool filter = g.periodic && cfg.filter_cutoff < 1.0;

    SolutionStrip strip;
    strip.allocate(g, M * dt, M);
    strip.drift = seed.drift;
    strip.periodicity = d.periodicity;
    const int N = g.N;
    auto row_of = [&](int i) {
        return Row(strip.pos.begin() + static_cast<long>(i) * N, strip.pos.begin() + static_cast<long>(i + 1) * N);
    };
    auto store = [&](int i, const Row& r) {
        std::copy(r.begin(), r.end(), strip.pos.begin() + static_cast<long>(i) * N);
    };

    const int c = strip.center_row();
    Row up(static_cast<std::size_t>(N));
    Row down(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        up[jj] = seed.a[0][jj] + dt * seed.a[1][jj] + dt * dt * seed.a[2][jj];
        down[jj] = seed.a[0][jj] - dt * seed.a[1][jj] + dt * dt * seed.a[2][jj];
    }
    store(c, seed.a[0]);
    store(c + 1, up);
    store(c - 1, down);

    for (int n = 1; n < M; ++n) {
        for (const int dir : {1, -1}) {
            const Row older = row_of(c + dir * (n - 2));
            const Row prev = row_of(c + dir * (n - 1));
            const Row cur = row_of(c + dir * n);
            Row next = leapfrog(older, prev, cur, dir, h, g, strip.drift, dt, n);
            if (filter) {
                next = lowpass_filter(next, cfg.filter_cutoff, strip.drift);
            }
            store(c + dir * (n + 1), next);
        }
    }

    // Derivative fields: s by the grid differentiation, t by second-order
    // differences (one-sided on the outermost rows).
    const int rows = strip.rows();
    for (int i = 0; i < rows; ++i) {
        const Row p = row_of(i);
        const Row ds = s_derivative(p, g, 1, strip.drift);
        const Row dss = s_derivative(p, g, 2, strip.drift);
        for (int j = 0; j < N; ++j) {
            auto at = [&](int ii) { return strip.pos[strip.index(j, ii)]; };
            Vec3 pt;
            Vec3 ptt;
            if (i == 0) {
                pt = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2.0 * dt);
                ptt = (2.0 * at(0) - 5.0 * at(1) + 4.0 * at(2) - at(3)) / (dt * dt);
            } else if (i == rows - 1) {
                pt = (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) / (2.0 * dt);
                ptt = (2.0 * at(i) - 5.0 * at(i - 1) + 4.0 * at(i - 2) - at(i - 3)) / (dt * dt);
            } else {
                pt = (at(i + 1) - at(i - 1)) / (2.0 * dt);
                ptt = (at(i + 1) - 2.0 * at(i) + at(i - 1)) / (dt * dt);
            }
            const std::size_t idx = strip.index(j, i);
            strip.d_s[idx] = ds[static_cast<std::size_t>(j)];
            strip.d_ss[idx] = dss[static_cast<std::size_t>(j)];
            strip.d_t[idx] = pt;
            strip.d_tt[idx] = ptt;
        }
    }
    for (int i = 0; i < rows; ++i) {
        Row pt(static_cast<std::size_t>(N));
        for (int j = 0; j < N; ++j) {
            pt[static_cast<std::size_t>(j)] = strip.d_t[strip.index(j, i)];
        }
        const Row dst = s_derivative(pt, g, 1);
        for (int j = 0; j < N; ++j) {
            strip.d_st[strip.index(j, i)] = dst[static_cast<std::size_t>(j)];
        }
    }
    compute_normals(strip);
    return strip;
}

} // namespace bjorling
