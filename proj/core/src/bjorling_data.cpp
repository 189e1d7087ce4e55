// SPDX-License-Identifier: Apache-2.0
#include "bjorling/bjorling_data.hpp"

#include "bjorling/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace bjorling {

const char* to_string(PeriodKind k)
{
    switch (k) {
    case PeriodKind::None: return "none";
    case PeriodKind::Periodic: return "periodic";
    case PeriodKind::Moebius: return "moebius";
    case PeriodKind::Helicoidal: return "helicoidal";
    }
    return "?";
}

VecExpr3 parse_vec_expr(const std::array<std::string, 3>& components)
{
    const auto vars = VarSet::curve();
    return {parse_expr(components[0], vars), parse_expr(components[1], vars), parse_expr(components[2], vars)};
}

BjorlingData make_data(const std::array<std::string, 3>& beta, const std::array<std::string, 3>& field, double s0,
                       double s1, Periodicity p)
{
    return {parse_vec_expr(beta), parse_vec_expr(field), s0, s1, p};
}

PrescribedH PrescribedH::parse(std::string_view text)
{
    PrescribedH h{parse_expr(text, VarSet::sphere()), false};
    h.antisym = check_antipodal_antisymmetry(h);
    return h;
}

double PrescribedH::operator()(const Vec3& p) const
{
    const double v[3] = {p.x, p.y, p.z};
    return eval_real(h, std::span<const double>(v, 3));
}

namespace {

double sample_point(double s0, double s1, int n, int j)
{
    return n == 1 ? s0 : s0 + (s1 - s0) * j / (n - 1);
}

} // namespace

ValidationReport validate_data(const BjorlingData& d, int n_samples, double tol, double r_min)
{
    if (n_samples < 2) {
        throw DataError("validation needs at least 2 samples");
    }
    const VecExpr3 dbeta = derivative_expr(d.beta, "s");
    ValidationReport r;
    r.r_reg = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n_samples; ++j) {
        const double s = sample_point(d.s0, d.s1, n_samples, j);
        const Vec3 bp = eval_at(dbeta, s);
        const Vec3 B = d.field_at(s);
        const double len = std::abs(norm(bp) - norm(B));
        const double orth = std::abs(dot(bp, B));
        if (len > r.r_len) {
            r.r_len = len;
            r.s_len = s;
        }
        if (orth > r.r_orth) {
            r.r_orth = orth;
            r.s_orth = s;
        }
        r.r_reg = std::min(r.r_reg, norm(bp));
    }
    r.pass = r.r_len <= tol && r.r_orth <= tol && r.r_reg >= r_min;
    return r;
}

BjorlingData from_normal_field(const VecExpr3& beta, const VecExpr3& n, double s0, double s1, int n_samples,
                               double tol)
{
    const VecExpr3 dbeta = derivative_expr(beta, "s");
    for (int j = 0; j < n_samples; ++j) {
        const double s = sample_point(s0, s1, n_samples, j);
        const Vec3 nv = eval_at(n, s);
        const Vec3 bp = eval_at(dbeta, s);
        if (std::abs(norm(nv) - 1.0) > tol) {
            throw DataError("normal field is not unit at s = " + std::to_string(s));
        }
        if (std::abs(dot(nv, bp)) > tol * std::max(1.0, norm(bp))) {
            throw DataError("normal field is not orthogonal to beta' at s = " + std::to_string(s));
        }
    }
    BjorlingData d{beta, cross(n, dbeta), s0, s1, {}};
    // beta' ^ (n ^ beta') = |beta'|^2 n: the strip normal at t = 0 is +n.
    for (int j = 0; j < n_samples; j += std::max(1, n_samples / 16)) {
        const double s = sample_point(s0, s1, n_samples, j);
        const Vec3 eta0 = normalized(cross(eval_at(dbeta, s), d.field_at(s)));
        if (norm(eta0 - eval_at(n, s)) > 1e-8) {
            throw std::logic_error("orientation bookkeeping violated in from_normal_field");
        }
    }
    return d;
}

BjorlingData geodesic_data(const VecExpr3& beta, double s0, double s1, int n_samples, double tol,
                           double min_curvature)
{
    const VecExpr3 d1 = derivative_expr(beta, "s");
    const VecExpr3 d2 = derivative_expr(d1, "s");
    for (int j = 0; j < n_samples; ++j) {
        const double s = sample_point(s0, s1, n_samples, j);
        if (std::abs(norm(eval_at(d1, s)) - 1.0) > tol) {
            throw DataError("curve is not parametrized by arc length at s = " + std::to_string(s));
        }
        if (norm(eval_at(d2, s)) < min_curvature) {
            throw DataError("curvature vanishes at s = " + std::to_string(s));
        }
    }
    const Expr len = call(Func::Sqrt, dot(d2, d2));
    const VecExpr3 n{d2[0] / len, d2[1] / len, d2[2] / len};
    return from_normal_field(beta, n, s0, s1, n_samples, tol);
}

Periodicity classify_periodicity(const BjorlingData& d, double T, double tol, int n_samples)
{
    if (!(T > 0.0)) {
        throw DataError("period must be positive");
    }
    double beta_periodic = 0.0;
    double field_periodic = 0.0;
    double field_anti = 0.0;
    double shift_spread = 0.0;
    const Vec3 shift = d.beta_at(d.s0 + T) - d.beta_at(d.s0);
    for (int j = 0; j < n_samples; ++j) {
        const double s = sample_point(d.s0, d.s1, n_samples, j);
        const Vec3 b0 = d.beta_at(s);
        const Vec3 b1 = d.beta_at(s + T);
        const Vec3 f0 = d.field_at(s);
        const Vec3 f1 = d.field_at(s + T);
        beta_periodic = std::max(beta_periodic, norm(b1 - b0));
        field_periodic = std::max(field_periodic, norm(f1 - f0));
        field_anti = std::max(field_anti, norm(f1 + f0));
        shift_spread = std::max(shift_spread, norm(b1 - b0 - shift));
    }
    if (beta_periodic <= tol && field_anti <= tol) {
        return Periodicity::moebius(T);
    }
    if (beta_periodic <= tol && field_periodic <= tol) {
        return Periodicity::periodic(T);
    }
    if (shift_spread <= tol && field_periodic <= tol) {
        return Periodicity::helicoidal(T, shift);
    }
    return Periodicity::none();
}

std::vector<Vec3> sphere_samples(int n)
{
    std::vector<Vec3> pts;
    pts.reserve(static_cast<std::size_t>(n));
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden * i;
        pts.push_back({r * std::cos(phi), r * std::sin(phi), z});
    }
    return pts;
}

bool check_antipodal_antisymmetry(const PrescribedH& h, int n_samples, double tol)
{
    if (n_samples < 1) {
        throw DataError("antisymmetry check needs at least one sample");
    }
    double worst = 0.0;
    for (const Vec3& p : sphere_samples(n_samples)) {
        worst = std::max(worst, std::abs(h(-p) + h(p)));
    }
    return worst <= tol;
}

BjorlingData make_bended_helicoid_data(double radius, int k, bool allow_even)
{
    if (!(radius > 0.0)) {
        throw DataError("radius must be positive");
    }
    if (k % 2 == 0 && !allow_even) {
        throw DataError("an even number of half turns closes the field; no Möbius data");
    }
    char r[40];
    std::snprintf(r, sizeof r, "%.17g", radius);
    const std::string R(r);
    const std::string half = "(" + std::to_string(k) + "*s/2)";
    BjorlingData d = make_data({R + "*cos(s)", R + "*sin(s)", "0"},
                               {R + "*cos" + half + "*cos(s)", R + "*cos" + half + "*sin(s)", R + "*sin" + half},
                               0.0, 4.0 * std::numbers::pi);
    d.periodicity = (k % 2 != 0) ? Periodicity::moebius(2.0 * std::numbers::pi)
                                 : Periodicity::periodic(2.0 * std::numbers::pi);
    return d;
}

} // namespace bjorling
