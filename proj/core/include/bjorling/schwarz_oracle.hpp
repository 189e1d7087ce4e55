// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference solutions used to validate the solvers.
//
// For H = 0 the classical Schwarz formula
//
//   psi(s, t) = Re beta(z) + Im int_{s0}^{z} B(w) dw,   z = s + i t,
//
// gives the solution in closed form once beta and B are continued
// holomorphically. Along the real axis the integral is real, so only the
// vertical leg contributes: Im int = Re int_0^t B(s + i tau) dtau.
//
// Rotational translators (H(x) = <x, e3>) are surfaces of revolution whose
// arc-length profile (r(u), z(u)) with tangent angle theta solves
//
//   r' = cos theta,   z' = sin theta,   theta' = sign (c cos theta - sin theta / r).

#include "bjorling/bjorling_data.hpp"
#include "bjorling/grid.hpp"
#include "bjorling/strip.hpp"
#include "bjorling/validators.hpp"

#include <vector>

namespace bjorling {

struct QuadratureOptions {
    double tol = 1e-12;     // accepted change between refinements, relative to max(1, |I|)
    int max_segments = 4096; // per integration interval
};

/// Schwarz solution on the grid g x [-delta, delta] with 2 M_t + 1 rows.
/// Derivative fields are exact: psi_s = Re beta'(z) + Im B(z),
/// psi_t = Re B(z) - Im beta'(z), and so on.
/// Throws SolverError if the quadrature does not converge.
SolutionStrip schwarz_solve(const BjorlingData& d, const SGrid& g, double delta, int M_t,
                            const QuadratureOptions& q = {});

struct ProfileConvention {
    double sign = 1.0;
    double c = 2.0; // 2 when H is the average of the principal curvatures
};

struct ProfilePoint {
    double u = 0.0;
    double r = 0.0;
    double z = 0.0;
    double theta = 0.0;
};

struct TranslatorProfile {
    double tau = 1.0;
    double step = 0.0;
    ProfileConvention convention;
    std::vector<ProfilePoint> points; // ascending u, symmetric about u = 0

    /// theta' at a profile point.
    double curvature(const ProfilePoint& p) const;
    double min_radius() const;
};

/// Fixed-step classical Runge-Kutta over signed arc length `length`.
/// Throws SolverError if the profile reaches the axis (r <= 0).
ProfilePoint integrate_profile(const ProfilePoint& start, double length, int n_steps,
                               const ProfileConvention& conv = {});

/// Profile through the neck r(0) = tau, z(0) = 0, theta(0) = pi/2, sampled
/// every `step` on [-u_max, u_max]. u_max is rounded to a whole number of
/// steps.
TranslatorProfile translator_profile_ode(double tau, double u_max, double step, const ProfileConvention& conv = {});

/// Radius of the profile at height z, found by Newton iteration on the
/// cubic Hermite interpolant of z(u) (z' = sin theta, r' = cos theta).
/// Throws DataError if z lies outside the sampled range or z(u) is not
/// monotone there.
double profile_radius_at_height(const TranslatorProfile& p, double z);

/// The surface of revolution (r cos phi, r sin phi, z) with phi on a periodic
/// grid of N points and every `stride`-th profile sample as a t-row.
/// Derivatives come from the ODE right-hand side, not from differencing.
SolutionStrip revolution_strip(const TranslatorProfile& p, int N, int stride = 1);

/// max | |(x, y)| - r(z) | over the strip: agreement of a strip with the
/// surface of revolution, independent of how either is parametrized.
CheckReport translator_comparison(const TranslatorProfile& p, const SolutionStrip& strip, double threshold = 1e-5);

} // namespace bjorling
