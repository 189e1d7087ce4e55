// SPDX-License-Identifier: Apache-2.0
#pragma once

// Numerical pass/fail checks of the structural properties of a solved strip.
// Every residual is a sup-norm over the cached grid; on non-periodic grids
// the boundary band of one-sided stencils is excluded.

#include "bjorling/bjorling_data.hpp"
#include "bjorling/strip.hpp"
#include "bjorling/vec3.hpp"

#include <functional>
#include <string>

namespace bjorling {

struct CheckReport {
    std::string name;
    double max_residual = 0.0;
    double s = 0.0; // location of the maximum
    double t = 0.0;
    double threshold = 0.0;
    bool pass = true;
};

/// One report line: `check=<name> max=<float> at=(s,t) pass=<bool>`.
std::string format_report(const CheckReport& r);

inline constexpr double kConformalityThreshold = 1e-8;
inline constexpr double kGeometricThreshold = 1e-6;
inline constexpr double kSymmetryThreshold = 1e-8;

/// |(|psi_s|^2 - |psi_t|^2)/4| + |<psi_s, psi_t>/2|, the real and imaginary
/// parts of <psi_z, psi_z>.
CheckReport conformality_check(const SolutionStrip& strip, double threshold = kConformalityThreshold);

/// |H_num - h(eta)| with H_num = (eG - 2fF + gE) / (2(EG - F^2)) from the
/// cached first and second derivatives. Throws SolverError when EG - F^2
/// drops below 1e-14.
CheckReport mean_curvature_check(const SolutionStrip& strip, const PrescribedH& h,
                                 double threshold = kGeometricThreshold);

/// |psi_ss + psi_tt - 2 H(eta) psi_s ^ psi_t| with psi_tt taken from
/// fourth-order differences of the positions across t-rows, independent of
/// the solver's own t-derivatives. Needs M_t >= 2.
CheckReport pde_residual_check(const SolutionStrip& strip, const PrescribedH& h,
                               double threshold = kGeometricThreshold);

/// |psi(s + sigma, t) - (R_phi psi(s, t) + v)| where sigma is a shift by a
/// whole number of grid points and R_phi the rotation about e3. Columns wrap
/// with the strip drift on periodic grids. Throws DataError if no column
/// pair lies inside the usable range.
CheckReport symmetry_check(const SolutionStrip& strip, double phi, const Vec3& v, int sigma,
                           double threshold = kSymmetryThreshold);

/// |psi(s + T, -t) - psi(s, t)|. T must be a whole number of grid spacings
/// (DataError otherwise).
CheckReport mobius_involution_check(const SolutionStrip& strip, double T, double threshold = kGeometricThreshold);

/// |eta(s + T, -t) + eta(s, t)|, same alignment requirement.
CheckReport normal_antipodality_check(const SolutionStrip& strip, double T,
                                      double threshold = kGeometricThreshold);

/// max |psi(s, t) - ref(s, t)| against a reference parametrization.
CheckReport reference_check(const std::string& name, const SolutionStrip& strip,
                            const std::function<Vec3(double, double)>& ref, double threshold);

/// max |psi_a - psi_b| over rows with |t| <= t_max. Both strips must share
/// the grid and the t-sampling.
CheckReport strip_difference_check(const std::string& name, const SolutionStrip& a, const SolutionStrip& b,
                                   double threshold, double t_max = -1.0);

/// Grid shift equivalent to the length T. Throws DataError unless T is a
/// whole number of spacings within 1e-9 relative.
int grid_shift(const SGrid& g, double T);

} // namespace bjorling
