// SPDX-License-Identifier: Apache-2.0
#include "bjorling/solver_ck.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/parallel.hpp"
#include "bjorling/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bjorling {

namespace {

using Row = std::vector<Vec3>;

struct DerivativeRows {
    std::vector<Row> d1;
    std::vector<Row> d2;
};

DerivativeRows derivative_rows(const CoeffTensor& c)
{
    DerivativeRows r;
    for (int k = 0; k <= c.K; ++k) {
        const Vec3 drift = k == 0 ? c.drift : Vec3{};
        r.d1.push_back(s_derivative(c.a[static_cast<std::size_t>(k)], c.grid, 1, drift, c.noise_floor));
        r.d2.push_back(s_derivative(c.a[static_cast<std::size_t>(k)], c.grid, 2, drift, c.noise_floor));
    }
    return r;
}

} // namespace

CoeffTensor expand_coefficients(const BjorlingData& d, const PrescribedH& h, const SGrid& g, int K,
                                const CkOptions& opts)
{
    g.check();
    if (K < 2) {
        throw DataError("series order K must be at least 2");
    }
    const int N = g.N;
    CoeffTensor c;
    c.grid = g;
    c.K = K;
    c.periodicity = d.periodicity;
    c.noise_floor = g.periodic ? opts.noise_floor : 0.0;
    c.a.assign(static_cast<std::size_t>(K) + 1, Row(static_cast<std::size_t>(N)));
    for (int j = 0; j < N; ++j) {
        const double s = g.point(j);
        c.a[0][static_cast<std::size_t>(j)] = d.beta_at(s);
        c.a[1][static_cast<std::size_t>(j)] = d.field_at(s);
    }
    if (g.periodic) {
        c.drift = d.beta_at(g.s1) - d.beta_at(g.s0);
    }

    std::vector<Row> d1;
    std::vector<Row> d2;
    auto push_derivatives = [&](int k) {
        const Vec3 drift = k == 0 ? c.drift : Vec3{};
        d1.push_back(s_derivative(c.a[static_cast<std::size_t>(k)], g, 1, drift, c.noise_floor));
        d2.push_back(s_derivative(c.a[static_cast<std::size_t>(k)], g, 2, drift, c.noise_floor));
    };
    push_derivatives(0);
    push_derivatives(1);

    for (int k = 0; k + 2 <= K; ++k) {
        Row next(static_cast<std::size_t>(N));
        const double denom = static_cast<double>((k + 1) * (k + 2));
        parallel_for(static_cast<std::size_t>(N), [&](std::size_t j) {
            // Truncated series of psi_s and psi_t at this point, order k.
            Series3 ps = make_series3(k);
            Series3 pt = make_series3(k);
            for (int m = 0; m <= k; ++m) {
                const Vec3& dm = d1[static_cast<std::size_t>(m)][j];
                const Vec3& am = c.a[static_cast<std::size_t>(m + 1)][j];
                for (int comp = 0; comp < 3; ++comp) {
                    ps[comp][m] = dm[comp];
                    pt[comp][m] = (m + 1) * am[comp];
                }
            }
            const Series3 n = cross(ps, pt);
            const RealSeries len2 = dot(n, n);
            if (!(len2[0] > 0.0)) {
                std::ostringstream msg;
                msg << "degenerate normal at s = " << g.point(static_cast<int>(j)) << " (|beta' ^ B| = 0)";
                throw SolverError(msg.str());
            }
            const RealSeries len = sqrt(len2);
            const std::array<RealSeries, 3> eta{n[0] / len, n[1] / len, n[2] / len};
            const RealSeries hs = eval_series(h.h, std::span<const RealSeries>(eta.data(), 3));
            Vec3 rhs;
            for (int comp = 0; comp < 3; ++comp) {
                // coefficient k of H(eta) * N
                double prod = 0.0;
                for (int m = 0; m <= k; ++m) {
                    prod += hs[m] * n[comp][k - m];
                }
                rhs[comp] = 2.0 * prod - d2[static_cast<std::size_t>(k)][j][comp];
            }
            next[j] = rhs / denom;
            if (!std::isfinite(next[j].x) || !std::isfinite(next[j].y) || !std::isfinite(next[j].z)) {
                std::ostringstream msg;
                msg << "non-finite coefficient a_" << k + 2 << " at s = " << g.point(static_cast<int>(j));
                throw SolverError(msg.str());
            }
        });
        c.a[static_cast<std::size_t>(k) + 2] = std::move(next);
        push_derivatives(k + 2);
    }
    return c;
}

RadiusEstimate estimate_radius(const CoeffTensor& c, double safety)
{
    if (c.K < 6) {
        throw DataError("radius estimate needs K >= 6");
    }
    const int N = c.grid.N;
    RadiusEstimate est;
    est.per_point.assign(static_cast<std::size_t>(N), std::numeric_limits<double>::infinity());
    const int k_lo = std::max(2, c.K / 2);
    for (int j = 0; j < N; ++j) {
        double largest = 0.0;
        for (int k = 1; k <= c.K; ++k) {
            largest = std::max(largest, norm(c.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]));
        }
        // Least-squares slope of log|a_k| against k over the usable levels.
        double sk = 0.0;
        double sl = 0.0;
        double skk = 0.0;
        double skl = 0.0;
        int count = 0;
        for (int k = k_lo; k <= c.K; ++k) {
            const double v = norm(c.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
            if (v > 1e-14 * largest && v > 0.0) {
                const double l = std::log(v);
                sk += k;
                sl += l;
                skk += static_cast<double>(k) * k;
                skl += k * l;
                ++count;
            }
        }
        if (count >= 2) {
            const double den = count * skk - sk * sk;
            const double slope = (count * skl - sk * sl) / den;
            est.per_point[static_cast<std::size_t>(j)] = std::exp(-slope);
        }
    }
    const int band = c.grid.boundary_band();
    for (int j = band; j < N - band; ++j) {
        est.min_radius = std::min(est.min_radius, est.per_point[static_cast<std::size_t>(j)]);
    }
    est.suggested_delta = safety * est.min_radius;
    return est;
}

double truncation_delta(const CoeffTensor& c, double tol)
{
    const int N = c.grid.N;
    double scale = 0.0;
    for (int j = 0; j < N; ++j) {
        scale = std::max(scale, norm(c.a[1][static_cast<std::size_t>(j)]));
    }
    double delta = std::numeric_limits<double>::infinity();
    const int band = c.grid.boundary_band();
    // The last two levels: one of them vanishes for even/odd solutions.
    for (int k = c.K - 1; k <= c.K; ++k) {
        for (int j = band; j < N - band; ++j) {
            const double v = norm(c.a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
            if (v > 0.0) {
                delta = std::min(delta, std::pow(tol * scale / v, 1.0 / k));
            }
        }
    }
    return delta;
}

SolutionStrip evaluate_strip(const CoeffTensor& c, double delta, int M_t, const EvalOptions& opts)
{
    if (!(delta > 0.0) || M_t < 1) {
        throw DataError("strip half-width must be positive and M_t >= 1");
    }
    if (!opts.allow_beyond_radius) {
        const auto est = estimate_radius(c, opts.safety);
        if (delta > est.suggested_delta) {
            std::ostringstream msg;
            msg << "delta = " << delta << " exceeds the suggested " << est.suggested_delta
                << " (estimated radius " << est.min_radius << ")";
            throw DataError(msg.str());
        }
    }
    const auto rows = derivative_rows(c);
    SolutionStrip strip;
    strip.allocate(c.grid, delta, M_t);
    strip.drift = c.drift;
    strip.periodicity = c.periodicity;
    strip.coeffs = c;
    const int N = c.grid.N;
    const int K = c.K;
    parallel_for(static_cast<std::size_t>(strip.rows()), [&](std::size_t ii) {
        const int i = static_cast<int>(ii);
        const double t = strip.t[ii];
        for (int j = 0; j < N; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            Vec3 p, ps, pss, pt, pst, ptt;
            // Horner in t for the value and its t-derivatives.
            for (int k = K; k >= 0; --k) {
                const auto kk = static_cast<std::size_t>(k);
                p = p * t + c.a[kk][jj];
                ps = ps * t + rows.d1[kk][jj];
                pss = pss * t + rows.d2[kk][jj];
                if (k >= 1) {
                    pt = pt * t + static_cast<double>(k) * c.a[kk][jj];
                    pst = pst * t + static_cast<double>(k) * rows.d1[kk][jj];
                }
                if (k >= 2) {
                    ptt = ptt * t + static_cast<double>(k * (k - 1)) * c.a[kk][jj];
                }
            }
            const std::size_t idx = strip.index(j, i);
            strip.pos[idx] = p;
            strip.d_s[idx] = ps;
            strip.d_ss[idx] = pss;
            strip.d_t[idx] = pt;
            strip.d_st[idx] = pst;
            strip.d_tt[idx] = ptt;
        }
    });
    compute_normals(strip);
    return strip;
}

} // namespace bjorling
