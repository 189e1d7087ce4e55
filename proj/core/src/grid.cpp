// SPDX-License-Identifier: Apache-2.0
#include "bjorling/grid.hpp"

#include "bjorling/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace bjorling {

void SGrid::check() const
{
    if (N < 8) {
        throw DataError("grid needs at least 8 points, got " + std::to_string(N));
    }
    if (!(s1 > s0)) {
        throw DataError("grid interval is empty");
    }
}

std::vector<double> SGrid::points() const
{
    std::vector<double> s(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
        s[static_cast<std::size_t>(j)] = point(j);
    }
    return s;
}

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface is.
class PlanCache {
public:
    struct Plans {
        fftw_plan forward;
        fftw_plan backward;
    };

    static PlanCache& instance()
    {
        static PlanCache cache;
        return cache;
    }

    Plans get(int n)
    {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) {
            return it->second;
        }
        std::vector<double> re(static_cast<std::size_t>(n));
        std::vector<std::complex<double>> sp(static_cast<std::size_t>(n / 2 + 1));
        auto* c = reinterpret_cast<fftw_complex*>(sp.data());
        Plans p{fftw_plan_dft_r2c_1d(n, re.data(), c, FFTW_ESTIMATE | FFTW_UNALIGNED),
                fftw_plan_dft_c2r_1d(n, c, re.data(), FFTW_ESTIMATE | FFTW_UNALIGNED)};
        plans_.emplace(n, p);
        return p;
    }

    ~PlanCache()
    {
        for (auto& [n, p] : plans_) {
            fftw_destroy_plan(p.forward);
            fftw_destroy_plan(p.backward);
        }
    }

private:
    std::mutex mutex_;
    std::map<int, Plans> plans_;
};

std::vector<std::complex<double>> forward(std::span<const double> row)
{
    const int n = static_cast<int>(row.size());
    auto plans = PlanCache::instance().get(n);
    std::vector<double> in(row.begin(), row.end());
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n / 2 + 1));
    fftw_execute_dft_r2c(plans.forward, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> backward(std::vector<std::complex<double>> spectrum, int n)
{
    auto plans = PlanCache::instance().get(n);
    std::vector<double> out(static_cast<std::size_t>(n));
    fftw_execute_dft_c2r(plans.backward, reinterpret_cast<fftw_complex*>(spectrum.data()), out.data());
    const double scale = 1.0 / n;
    for (auto& v : out) {
        v *= scale;
    }
    return out;
}

// Periodic part of a quasi-periodic row: row_j - drift * j / N.
std::vector<double> remove_drift(std::span<const double> row, double drift)
{
    std::vector<double> r(row.begin(), row.end());
    if (drift != 0.0) {
        const double n = static_cast<double>(row.size());
        for (std::size_t j = 0; j < r.size(); ++j) {
            r[j] -= drift * static_cast<double>(j) / n;
        }
    }
    return r;
}

void add_drift(std::vector<double>& r, double drift)
{
    if (drift != 0.0) {
        const double n = static_cast<double>(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) {
            r[j] += drift * static_cast<double>(j) / n;
        }
    }
}

std::vector<double> spectral_derivative(std::span<const double> row, double length, int order, double drift,
                                        double floor)
{
    const int n = static_cast<int>(row.size());
    auto spectrum = forward(remove_drift(row, drift));
    if (floor > 0.0) {
        for (auto& c : spectrum) {
            if (std::abs(c) / n < floor) {
                c = {};
            }
        }
    }
    const double base = 2.0 * std::numbers::pi / length;
    for (int m = 0; m <= n / 2; ++m) {
        const double k = base * m;
        auto& c = spectrum[static_cast<std::size_t>(m)];
        if (order == 1) {
            // The Nyquist mode of an even-length row has no odd derivative.
            c = (n % 2 == 0 && m == n / 2) ? std::complex<double>{} : c * std::complex<double>(0.0, k);
        } else {
            c *= -k * k;
        }
    }
    auto out = backward(std::move(spectrum), n);
    if (order == 1 && drift != 0.0) {
        for (auto& v : out) {
            v += drift / length;
        }
    }
    return out;
}

std::vector<double> fd_derivative(std::span<const double> row, double h, int order)
{
    const int n = static_cast<int>(row.size());
    std::vector<double> out(static_cast<std::size_t>(n));
    const int half = 3;
    // Centered 7-point stencil, shared by all interior points.
    std::vector<double> offsets;
    for (int o = -half; o <= half; ++o) {
        offsets.push_back(o);
    }
    const auto interior = fd_weights(0.0, offsets, order);
    const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);

    // One-sided closures: 7 nodes for the first derivative, 8 for the
    // second, which keeps sixth order at the ends.
    const int width = order == 1 ? 7 : 8;
    std::vector<double> nodes(static_cast<std::size_t>(width));
    for (int i = 0; i < width; ++i) {
        nodes[static_cast<std::size_t>(i)] = i;
    }

    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        if (j >= half && j < n - half) {
            for (int o = -half; o <= half; ++o) {
                acc += interior[static_cast<std::size_t>(o + half)] * row[static_cast<std::size_t>(j + o)];
            }
        } else if (j < half) {
            const auto w = fd_weights(static_cast<double>(j), nodes, order);
            for (int i = 0; i < width; ++i) {
                acc += w[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(i)];
            }
        } else {
            // Mirror of the left closure, anchored at the last node.
            const int first = n - width;
            const auto w = fd_weights(static_cast<double>(j - first), nodes, order);
            for (int i = 0; i < width; ++i) {
                acc += w[static_cast<std::size_t>(i)] * row[static_cast<std::size_t>(first + i)];
            }
        }
        out[static_cast<std::size_t>(j)] = acc * scale;
    }
    return out;
}

template <typename Fn>
std::vector<Vec3> per_component(std::span<const Vec3> row, const Vec3& drift, Fn&& fn)
{
    std::vector<Vec3> out(row.size());
    std::vector<double> comp(row.size());
    for (int c = 0; c < 3; ++c) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            comp[j] = row[j][c];
        }
        const auto r = fn(std::span<const double>(comp), drift[c]);
        for (std::size_t j = 0; j < row.size(); ++j) {
            out[j][c] = r[j];
        }
    }
    return out;
}

} // namespace

std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order)
{
    // Fornberg, "Generation of finite difference formulas on arbitrarily
    // spaced grids", Math. Comp. 51 (1988).
    const int n = static_cast<int>(nodes.size()) - 1;
    const int m = order;
    std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[static_cast<std::size_t>(i)] - nodes[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) {
                    c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) {
                c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        w[static_cast<std::size_t>(i)] = c[i][m];
    }
    return w;
}

namespace {

std::vector<double> s_derivative_scaled(std::span<const double> row, const SGrid& g, int order, double drift,
                                        double floor)
{
    if (order != 1 && order != 2) {
        throw DataError("s_derivative supports orders 1 and 2");
    }
    if (static_cast<int>(row.size()) != g.N) {
        throw DataError("row length does not match grid");
    }
    if (g.periodic) {
        return spectral_derivative(row, g.length(), order, drift, floor);
    }
    return fd_derivative(row, g.spacing(), order);
}

} // namespace

std::vector<double> s_derivative(std::span<const double> row, const SGrid& g, int order, double drift,
                                 double noise_floor)
{
    double scale = 0.0;
    for (double v : row) {
        scale = std::max(scale, std::abs(v));
    }
    return s_derivative_scaled(row, g, order, drift, noise_floor * scale);
}

std::vector<Vec3> s_derivative(std::span<const Vec3> row, const SGrid& g, int order, const Vec3& drift,
                               double noise_floor)
{
    double scale = 0.0;
    for (const Vec3& v : row) {
        scale = std::max(scale, norm(v));
    }
    const double floor = noise_floor * scale;
    return per_component(row, drift, [&](std::span<const double> r, double d) {
        return s_derivative_scaled(r, g, order, d, floor);
    });
}

std::vector<double> lowpass_filter(std::span<const double> row, double cutoff, double drift)
{
    if (!(cutoff > 0.0 && cutoff <= 1.0)) {
        throw DataError("filter cutoff must lie in (0, 1]");
    }
    if (cutoff == 1.0) {
        return {row.begin(), row.end()};
    }
    const int n = static_cast<int>(row.size());
    auto spectrum = forward(remove_drift(row, drift));
    const double keep = cutoff * (n / 2);
    for (int m = 0; m <= n / 2; ++m) {
        if (m > keep) {
            spectrum[static_cast<std::size_t>(m)] = {};
        }
    }
    auto out = backward(std::move(spectrum), n);
    add_drift(out, drift);
    return out;
}

std::vector<Vec3> lowpass_filter(std::span<const Vec3> row, double cutoff, const Vec3& drift)
{
    return per_component(row, drift, [&](std::span<const double> r, double d) { return lowpass_filter(r, cutoff, d); });
}

} // namespace bjorling
