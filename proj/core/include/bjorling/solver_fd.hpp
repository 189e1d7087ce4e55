// SPDX-License-Identifier: Apache-2.0
#pragma once

// Explicit leapfrog marching of psi_tt = 2 H(eta) psi_s ^ psi_t - psi_ss
// from the same Cauchy data as the series solver. Used as an independent
// cross-check for small |t|.

#include "bjorling/bjorling_data.hpp"
#include "bjorling/grid.hpp"
#include "bjorling/strip.hpp"

namespace bjorling {

struct FdConfig {
    double dt = 1e-3;
    int n_steps = 100;                 // per half-strip
    double filter_cutoff = 2.0 / 3.0;  // fraction of Nyquist kept; 1 disables, ignored on non-periodic grids
};

/// March to t = +- n_steps dt. The first step on each side is seeded from
/// the series: psi(+-dt) = beta +- dt B + dt^2 a_2. Later steps use
///
///   psi^{n+1} = 2 psi^n - psi^{n-1} + dt^2 (2 H(eta^n) psi_s^n ^ psi_t^n - psi_ss^n)
///
/// with psi_t^n from the second-order backward difference of the three
/// latest rows, so the step stays explicit.
///
/// The strip's psi_t and psi_tt come from second-order differences across
/// rows. Throws DataError on an invalid configuration and SolverError with
/// the step index on blow-up or a degenerate normal.
SolutionStrip march(const BjorlingData& d, const PrescribedH& h, const SGrid& g, const FdConfig& cfg = {});

} // namespace bjorling
