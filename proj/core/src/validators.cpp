// SPDX-License-Identifier: Apache-2.0
#include "bjorling/validators.hpp"

#include "bjorling/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bjorling {

namespace {

/// Running maximum with its location.
class MaxTracker {
public:
    MaxTracker(std::string name, double threshold)
    {
        report_.name = std::move(name);
        report_.threshold = threshold;
    }

    void update(double value, double s, double t)
    {
        // A NaN residual must fail the check, so the first one sticks.
        if (std::isnan(report_.max_residual)) {
            return;
        }
        if (!seen_ || std::isnan(value) || value > report_.max_residual) {
            report_.max_residual = value;
            report_.s = s;
            report_.t = t;
            seen_ = true;
        }
    }

    CheckReport finish()
    {
        report_.pass = report_.max_residual <= report_.threshold;
        return report_;
    }

private:
    CheckReport report_;
    bool seen_ = false;
};

struct ColumnRange {
    int begin;
    int end;
};

ColumnRange usable_columns(const SolutionStrip& strip)
{
    const int band = strip.grid.boundary_band();
    return {band, strip.cols() - band};
}

double strip_t(const SolutionStrip& strip, int i) { return strip.t[static_cast<std::size_t>(i)]; }

/// Checks of the form |F(s + shift, mirrored t) - G(s, t)| over all column
/// pairs that stay inside the usable range.
template <typename Residual>
CheckReport shifted_check(const SolutionStrip& strip, const std::string& name, int shift, double threshold,
                          Residual&& residual)
{
    const auto cols = usable_columns(strip);
    MaxTracker tracker(name, threshold);
    bool any = false;
    for (int j = cols.begin; j < cols.end; ++j) {
        const long shifted = static_cast<long>(j) + shift;
        if (!strip.grid.periodic && (shifted < cols.begin || shifted >= cols.end)) {
            continue;
        }
        any = true;
        for (int i = 0; i < strip.rows(); ++i) {
            tracker.update(residual(j, shifted, i), strip.grid.point(j), strip_t(strip, i));
        }
    }
    if (!any) {
        throw DataError("check '" + name + "': shifted columns leave the grid (empty overlap)");
    }
    return tracker.finish();
}

} // namespace

std::string format_report(const CheckReport& r)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, "check=%s max=%.6e at=(%.6g,%.6g) pass=%s", r.name.c_str(), r.max_residual, r.s,
                  r.t, r.pass ? "true" : "false");
    return buf;
}

int grid_shift(const SGrid& g, double T)
{
    const double steps = T / g.spacing();
    const double rounded = std::round(steps);
    if (!(std::abs(steps - rounded) <= 1e-9 * std::max(1.0, std::abs(steps)))) {
        std::ostringstream msg;
        msg << "shift T = " << T << " is not a whole number of grid spacings (" << steps << ")";
        throw DataError(msg.str());
    }
    return static_cast<int>(rounded);
}

CheckReport conformality_check(const SolutionStrip& strip, double threshold)
{
    const auto cols = usable_columns(strip);
    MaxTracker tracker("conformality", threshold);
    for (int i = 0; i < strip.rows(); ++i) {
        for (int j = cols.begin; j < cols.end; ++j) {
            const std::size_t idx = strip.index(j, i);
            const Vec3& ps = strip.d_s[idx];
            const Vec3& pt = strip.d_t[idx];
            const double re = std::abs(dot(ps, ps) - dot(pt, pt)) / 4.0;
            const double im = std::abs(dot(ps, pt)) / 2.0;
            tracker.update(re + im, strip.grid.point(j), strip_t(strip, i));
        }
    }
    return tracker.finish();
}

CheckReport mean_curvature_check(const SolutionStrip& strip, const PrescribedH& h, double threshold)
{
    const auto cols = usable_columns(strip);
    MaxTracker tracker("mean_curvature", threshold);
    for (int i = 0; i < strip.rows(); ++i) {
        for (int j = cols.begin; j < cols.end; ++j) {
            const std::size_t idx = strip.index(j, i);
            const Vec3& eta = strip.normal[idx];
            const double E = dot(strip.d_s[idx], strip.d_s[idx]);
            const double F = dot(strip.d_s[idx], strip.d_t[idx]);
            const double G = dot(strip.d_t[idx], strip.d_t[idx]);
            const double e = dot(strip.d_ss[idx], eta);
            const double f = dot(strip.d_st[idx], eta);
            const double g = dot(strip.d_tt[idx], eta);
            const double det = E * G - F * F;
            if (!(det >= 1e-14)) {
                std::ostringstream msg;
                msg << "degenerate metric at (s, t) = (" << strip.grid.point(j) << ", " << strip_t(strip, i)
                    << "): EG - F^2 = " << det;
                throw SolverError(msg.str());
            }
            const double h_num = (e * G - 2.0 * f * F + g * E) / (2.0 * det);
            tracker.update(std::abs(h_num - h(eta)), strip.grid.point(j), strip_t(strip, i));
        }
    }
    return tracker.finish();
}

CheckReport pde_residual_check(const SolutionStrip& strip, const PrescribedH& h, double threshold)
{
    if (strip.M_t < 2) {
        throw DataError("pde residual needs at least two t-rows on each side");
    }
    const auto cols = usable_columns(strip);
    const double dt = strip.delta / strip.M_t;
    MaxTracker tracker("pde_residual", threshold);
    for (int i = 2; i + 2 < strip.rows(); ++i) {
        for (int j = cols.begin; j < cols.end; ++j) {
            auto p = [&](int di) { return strip.pos[strip.index(j, i + di)]; };
            const Vec3 ptt =
                (-1.0 * p(-2) + 16.0 * p(-1) - 30.0 * p(0) + 16.0 * p(1) - 1.0 * p(2)) / (12.0 * dt * dt);
            const std::size_t idx = strip.index(j, i);
            const Vec3 n = cross(strip.d_s[idx], strip.d_t[idx]);
            const Vec3 r = strip.d_ss[idx] + ptt - 2.0 * h(n / norm(n)) * n;
            tracker.update(norm(r), strip.grid.point(j), strip_t(strip, i));
        }
    }
    return tracker.finish();
}

CheckReport symmetry_check(const SolutionStrip& strip, double phi, const Vec3& v, int sigma, double threshold)
{
    return shifted_check(strip, "symmetry", sigma, threshold, [&](int j, long shifted, int i) {
        return norm(strip.position_unwrapped(shifted, i) - (rotate_e3(strip.pos[strip.index(j, i)], phi) + v));
    });
}

CheckReport mobius_involution_check(const SolutionStrip& strip, double T, double threshold)
{
    const int shift = grid_shift(strip.grid, T);
    const int last = strip.rows() - 1;
    return shifted_check(strip, "mobius_involution", shift, threshold, [&](int j, long shifted, int i) {
        return norm(strip.position_unwrapped(shifted, last - i) - strip.pos[strip.index(j, i)]);
    });
}

CheckReport normal_antipodality_check(const SolutionStrip& strip, double T, double threshold)
{
    const int shift = grid_shift(strip.grid, T);
    const int last = strip.rows() - 1;
    return shifted_check(strip, "normal_antipodality", shift, threshold, [&](int j, long shifted, int i) {
        return norm(strip.normal_unwrapped(shifted, last - i) + strip.normal[strip.index(j, i)]);
    });
}

CheckReport reference_check(const std::string& name, const SolutionStrip& strip,
                            const std::function<Vec3(double, double)>& ref, double threshold)
{
    const auto cols = usable_columns(strip);
    MaxTracker tracker(name, threshold);
    for (int i = 0; i < strip.rows(); ++i) {
        for (int j = cols.begin; j < cols.end; ++j) {
            const double s = strip.grid.point(j);
            const double t = strip_t(strip, i);
            tracker.update(norm(strip.pos[strip.index(j, i)] - ref(s, t)), s, t);
        }
    }
    return tracker.finish();
}

CheckReport strip_difference_check(const std::string& name, const SolutionStrip& a, const SolutionStrip& b,
                                   double threshold, double t_max)
{
    if (a.grid.N != b.grid.N || a.grid.s0 != b.grid.s0 || a.grid.s1 != b.grid.s1 || a.rows() != b.rows()) {
        throw DataError("strips for '" + name + "' do not share a grid");
    }
    for (int i = 0; i < a.rows(); ++i) {
        if (std::abs(strip_t(a, i) - strip_t(b, i)) > 1e-12 * std::max(1.0, a.delta)) {
            throw DataError("strips for '" + name + "' do not share the t-sampling");
        }
    }
    const auto cols = usable_columns(a);
    MaxTracker tracker(name, threshold);
    for (int i = 0; i < a.rows(); ++i) {
        const double t = strip_t(a, i);
        if (t_max >= 0.0 && std::abs(t) > t_max * (1.0 + 1e-12)) {
            continue;
        }
        for (int j = cols.begin; j < cols.end; ++j) {
            const std::size_t idx = a.index(j, i);
            tracker.update(norm(a.pos[idx] - b.pos[idx]), a.grid.point(j), t);
        }
    }
    return tracker.finish();
}

} // namespace bjorling
