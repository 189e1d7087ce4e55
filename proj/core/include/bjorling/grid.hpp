// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bjorling/vec3.hpp"

#include <span>
#include <vector>

namespace bjorling {

/// Uniform grid over the curve parameter s.
///
/// Periodic grids omit the duplicate endpoint: s_j = s0 + j h, h = (s1 - s0)/N.
/// Non-periodic grids include both ends: h = (s1 - s0)/(N - 1).
struct SGrid {
    double s0 = 0.0;
    double s1 = 1.0;
    int N = 8;
    bool periodic = false;

    /// Throws DataError unless N >= 8 and s1 > s0.
    void check() const;

    double length() const { return s1 - s0; }
    double spacing() const { return periodic ? (s1 - s0) / N : (s1 - s0) / (N - 1); }
    double point(int j) const { return s0 + j * spacing(); }
    std::vector<double> points() const;

    /// Number of points at each non-periodic end whose derivatives use
    /// one-sided stencils; zero on periodic grids.
    int boundary_band() const { return periodic ? 0 : 3; }
};

/// Derivative (order 1 or 2) of samples along the grid.
///
/// Periodic grids use trigonometric (FFT) differentiation. `drift` is the
/// jump row(s + L) - row(s) over one grid length L, for quasi-periodic rows
/// such as the coordinate s itself; the linear part is differentiated exactly.
/// Non-periodic grids use 7-point sixth-order centered differences and
/// sixth-order one-sided closures near the ends.
///
/// With noise_floor > 0 (periodic grids only), Fourier modes of the input
/// whose amplitude is below noise_floor * max|row| are discarded first.
/// Repeated differentiation in the t-marching otherwise amplifies the
/// round-off carried by those modes.
std::vector<double> s_derivative(std::span<const double> row, const SGrid& g, int order, double drift = 0.0,
                                 double noise_floor = 0.0);

/// Component-wise; with noise_floor > 0 the floor is relative to max |row_j|
/// over all three components.
std::vector<Vec3> s_derivative(std::span<const Vec3> row, const SGrid& g, int order, const Vec3& drift = {},
                               double noise_floor = 0.0);

/// Zero every Fourier mode above cutoff * (N/2). Periodic rows only;
/// `drift` as for s_derivative. cutoff = 1 leaves the row untouched.
std::vector<double> lowpass_filter(std::span<const double> row, double cutoff, double drift = 0.0);
std::vector<Vec3> lowpass_filter(std::span<const Vec3> row, double cutoff, const Vec3& drift = {});

/// Finite-difference weights for derivative `order` at `x0` over `nodes`
/// (Fornberg's recursion).
std::vector<double> fd_weights(double x0, std::span<const double> nodes, int order);

} // namespace bjorling
