// SPDX-License-Identifier: Apache-2.0
#pragma once

// Series marching for psi_ss + psi_tt = 2 H(eta) psi_s ^ psi_t with
// psi(s, 0) = beta(s), psi_t(s, 0) = B(s), eta = psi_s ^ psi_t / |psi_s ^ psi_t|.
//
// Writing psi(s, t) = sum_k a_k(s) t^k, coefficient k of the equation gives
//
//   (k + 1)(k + 2) a_{k+2} = [2 H(N/|N|) N]_k - (a_k)''     with N = psi_s ^ psi_t,
//
// whose right-hand side involves a_0 .. a_{k+1} only. Levels are therefore
// built in ascending k, each one explicit.

#include "bjorling/bjorling_data.hpp"
#include "bjorling/grid.hpp"
#include "bjorling/strip.hpp"

#include <limits>
#include <vector>

namespace bjorling {

struct CkOptions {
    /// Relative floor below which Fourier modes of a coefficient row are
    /// discarded before it is differentiated in s (periodic grids only).
    /// 0 disables filtering.
    double noise_floor = 1e-13;
};

/// Coefficients a_0 .. a_K on grid g. Periodic grids treat beta as
/// quasi-periodic with drift beta(s1) - beta(s0).
/// Throws SolverError on a degenerate normal or a non-finite coefficient.
CoeffTensor expand_coefficients(const BjorlingData& d, const PrescribedH& h, const SGrid& g, int K,
                                const CkOptions& opts = {});

struct RadiusEstimate {
    std::vector<double> per_point; // +inf where the series terminates
    double min_radius = std::numeric_limits<double>::infinity();
    double suggested_delta = std::numeric_limits<double>::infinity();
};

/// Root-test estimate of the t-radius of convergence at every grid point:
/// a least-squares fit of log|a_k| over the upper half of the levels.
RadiusEstimate estimate_radius(const CoeffTensor& c, double safety = 0.5);

/// Largest delta for which the last retained term |a_K| delta^K stays below
/// `tol` times the size of the data, at every grid point.
double truncation_delta(const CoeffTensor& c, double tol = 1e-10);

struct EvalOptions {
    bool allow_beyond_radius = false;
    double safety = 0.5;
};

/// Sum the series on the (N x (2 M_t + 1)) grid, t in [-delta, delta].
/// Throws DataError if delta exceeds the suggested value (unless allowed)
/// and SolverError if |psi_s ^ psi_t| < 1e-12 anywhere.
SolutionStrip evaluate_strip(const CoeffTensor& c, double delta, int M_t, const EvalOptions& opts = {});

} // namespace bjorling
