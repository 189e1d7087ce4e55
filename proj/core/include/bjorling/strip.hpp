// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bjorling/bjorling_data.hpp"
#include "bjorling/grid.hpp"
#include "bjorling/vec3.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace bjorling {

/// Taylor coefficients in t of the solution at every grid point:
/// psi(s_j, t) = sum_k a[k][j] t^k.
struct CoeffTensor {
    SGrid grid;
    int K = 0;
    std::vector<std::vector<Vec3>> a; // a[k][j], k = 0..K
    Vec3 drift{};                     // a[0](s + L) - a[0](s) on periodic grids
    double noise_floor = 0.0;         // used for every s-derivative of a row
    Periodicity periodicity;
};

/// A solved strip sampled on the grid s_j x t_i, t_i = -delta + i delta / M_t.
///
/// Fields are stored t-row major: index i * N + j. Second derivatives are
/// filled by every producer so that curvature checks can run on any strip.
struct SolutionStrip {
    SGrid grid;
    double delta = 0.0;
    int M_t = 0;
    Vec3 drift{}; // psi(s + L, t) - psi(s, t) on periodic grids
    Periodicity periodicity;
    std::vector<double> t;

    std::vector<Vec3> pos;
    std::vector<Vec3> d_s;
    std::vector<Vec3> d_t;
    std::vector<Vec3> d_ss;
    std::vector<Vec3> d_st;
    std::vector<Vec3> d_tt;
    std::vector<Vec3> normal;

    std::optional<CoeffTensor> coeffs;

    int rows() const { return 2 * M_t + 1; }
    int cols() const { return grid.N; }
    std::size_t index(int j, int i) const { return static_cast<std::size_t>(i) * grid.N + j; }
    /// Row index of t = 0.
    int center_row() const { return M_t; }

    /// Allocate every field for the given grid and t-sampling.
    void allocate(const SGrid& g, double delta_, int m_t);

    /// Position at column j, which may lie outside [0, N) on periodic grids;
    /// wrapping adds the per-length drift.
    Vec3 position_unwrapped(long j, int i) const;
    /// Normal at an unwrapped periodic column.
    Vec3 normal_unwrapped(long j, int i) const;
};

/// Fill `normal` from d_s ^ d_t. Throws SolverError where the cross product
/// falls below `min_cross` (the immersion degenerates).
void compute_normals(SolutionStrip& strip, double min_cross = 1e-12);

} // namespace bjorling
