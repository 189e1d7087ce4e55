// SPDX-License-Identifier: Apache-2.0
#pragma once

// Björling data: an analytic regular curve beta(s) together with an
// analytic field B(s) along it satisfying |beta'| = |B| and <beta', B> = 0.

#include "bjorling/expr.hpp"
#include "bjorling/vec3.hpp"

#include <array>
#include <string>
#include <string_view>

namespace bjorling {

enum class PeriodKind { None, Periodic, Moebius, Helicoidal };

const char* to_string(PeriodKind k);

/// Declared or detected periodicity. `shift` is the translation per period
/// for helicoidal data (beta(s+T) = beta(s) + shift, B(s+T) = B(s)).
struct Periodicity {
    PeriodKind kind = PeriodKind::None;
    double T = 0.0;
    Vec3 shift{};

    static Periodicity none() { return {}; }
    static Periodicity periodic(double T) { return {PeriodKind::Periodic, T, {}}; }
    static Periodicity moebius(double T) { return {PeriodKind::Moebius, T, {}}; }
    static Periodicity helicoidal(double T, Vec3 v) { return {PeriodKind::Helicoidal, T, v}; }
};

struct BjorlingData {
    VecExpr3 beta;  // curve, expressions in s
    VecExpr3 field; // tangent field B, expressions in s
    double s0 = 0.0;
    double s1 = 1.0;
    Periodicity periodicity;

    Vec3 beta_at(double s) const { return eval_at(beta, s); }
    Vec3 field_at(double s) const { return eval_at(field, s); }
};

/// Parse three component strings in the variable s.
VecExpr3 parse_vec_expr(const std::array<std::string, 3>& components);

/// Build data from component strings; no validation is performed here.
BjorlingData make_data(const std::array<std::string, 3>& beta, const std::array<std::string, 3>& field, double s0,
                       double s1, Periodicity p = {});

/// The prescribed mean curvature as a function on the unit sphere.
struct PrescribedH {
    Expr h; // over {x, y, z}
    bool antisym = false;

    static PrescribedH parse(std::string_view text);
    double operator()(const Vec3& p) const;
};

struct ValidationReport {
    double r_len = 0.0;  // max | |beta'| - |B| |
    double r_orth = 0.0; // max |<beta', B>|
    double r_reg = 0.0;  // min |beta'|
    double s_len = 0.0;  // where r_len is attained
    double s_orth = 0.0; // where r_orth is attained
    bool pass = false;
};

/// Check the Björling conditions on a uniform endpoint-inclusive grid of
/// n_samples points over [s0, s1]. Failure is reported, never thrown.
ValidationReport validate_data(const BjorlingData& d, int n_samples = 1024, double tol = 1e-9, double r_min = 1e-8);

/// B = n ^ beta', so that the strip normal along t = 0 equals +n.
/// Throws DataError if n is not unit or not orthogonal to beta' on samples.
BjorlingData from_normal_field(const VecExpr3& beta, const VecExpr3& n, double s0, double s1,
                               int n_samples = 1024, double tol = 1e-9);

/// Data making the arc-length curve beta a geodesic of the solution: the
/// surface normal along beta is beta''/|beta''| and B = n ^ beta'.
/// Throws DataError if beta is not arc-length or has a zero of curvature.
BjorlingData geodesic_data(const VecExpr3& beta, double s0, double s1, int n_samples = 1024, double tol = 1e-9,
                           double min_curvature = 1e-6);

/// Test the data against period T on samples of [s0, s1]. Checks, in order:
/// Möbius (beta periodic, B antiperiodic), periodic, helicoidal (constant
/// translation of beta, B periodic); otherwise none.
Periodicity classify_periodicity(const BjorlingData& d, double T, double tol = 1e-9, int n_samples = 1024);

/// Points of a Fibonacci lattice on the unit sphere.
std::vector<Vec3> sphere_samples(int n);

/// max |h(-p) + h(p)| <= tol over a Fibonacci sphere sample.
bool check_antipodal_antisymmetry(const PrescribedH& h, int n_samples = 2048, double tol = 1e-12);

/// beta = r (cos s, sin s, 0); B = r cos(ks/2) (cos s, sin s, 0) + r sin(ks/2) e3.
/// Odd k gives Möbius data with T = 2 pi over the domain [0, 4 pi]. Even k
/// closes up (periodic) and is rejected unless allow_even is set.
BjorlingData make_bended_helicoid_data(double radius, int k, bool allow_even = false);

} // namespace bjorling
