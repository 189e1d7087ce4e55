// SPDX-License-Identifier: Apache-2.0
#include "bjorling/schwarz_oracle.hpp"

#include "bjorling/errors.hpp"
#include "bjorling/parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

namespace bjorling {

namespace {

using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;

CVec3 eval_complex3(const VecExpr3& e, Complex z)
{
    CVec3 out;
    for (int c = 0; c < 3; ++c) {
        out[static_cast<std::size_t>(c)] = eval_complex(e[static_cast<std::size_t>(c)], std::span<const Complex>(&z, 1));
    }
    return out;
}

Vec3 real_part(const CVec3& v) { return {v[0].real(), v[1].real(), v[2].real()}; }
Vec3 imag_part(const CVec3& v) { return {v[0].imag(), v[1].imag(), v[2].imag()}; }

using Gauss32 = boost::math::quadrature::gauss<double, 32>;

template <typename F>
Vec3 gauss_segment(F&& f, double a, double b)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const auto& x = Gauss32::abscissa();
    const auto& w = Gauss32::weights();
    Vec3 sum;
    // The 32-point rule has no node at the centre; abscissae come in +- pairs.
    for (std::size_t k = 0; k < x.size(); ++k) {
        sum += w[k] * (f(mid + half * x[k]) + f(mid - half * x[k]));
    }
    return half * sum;
}

/// Composite Gauss-Legendre on [a, b], doubling the segment count until two
/// successive results agree.
template <typename F>
Vec3 integrate(F&& f, double a, double b, const QuadratureOptions& q)
{
    if (a == b) {
        return {};
    }
    Vec3 prev = gauss_segment(f, a, b);
    for (int segments = 2; segments <= q.max_segments; segments *= 2) {
        Vec3 cur;
        for (int k = 0; k < segments; ++k) {
            const double lo = a + (b - a) * k / segments;
            const double hi = a + (b - a) * (k + 1) / segments;
            cur += gauss_segment(f, lo, hi);
        }
        if (norm(cur - prev) < q.tol * std::max(1.0, norm(cur))) {
            return cur;
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg << "quadrature did not converge on [" << a << ", " << b << "] with " << q.max_segments << " segments";
    throw SolverError(msg.str());
}

} // namespace

SolutionStrip schwarz_solve(const BjorlingData& d, const SGrid& g, double delta, int M_t, const QuadratureOptions& q)
{
    g.check();
    if (!(delta > 0.0) || M_t < 1) {
        throw DataError("strip half-width must be positive and M_t >= 1");
    }
    const VecExpr3 dbeta = derivative_expr(d.beta, "s");
    const VecExpr3 ddbeta = derivative_expr(dbeta, "s");
    const VecExpr3 dfield = derivative_expr(d.field, "s");

    SolutionStrip strip;
    strip.allocate(g, delta, M_t);
    strip.periodicity = d.periodicity;
    if (g.periodic) {
        strip.drift = d.beta_at(g.s1) - d.beta_at(g.s0);
    }
    const int center = strip.center_row();
    parallel_for(static_cast<std::size_t>(g.N), [&](std::size_t jj) {
        const int j = static_cast<int>(jj);
        const double s = g.point(j);
        auto vertical = [&](double tau) { return real_part(eval_complex3(d.field, Complex(s, tau))); };
        auto fill = [&](int i, const Vec3& integral) {
            const double t = strip.t[static_cast<std::size_t>(i)];
            const Complex z(s, t);
            const CVec3 b = eval_complex3(d.beta, z);
            const CVec3 db = eval_complex3(dbeta, z);
            const CVec3 ddb = eval_complex3(ddbeta, z);
            const CVec3 f = eval_complex3(d.field, z);
            const CVec3 df = eval_complex3(dfield, z);
            const std::size_t idx = strip.index(j, i);
            strip.pos[idx] = real_part(b) + integral;
            strip.d_s[idx] = real_part(db) + imag_part(f);
            strip.d_t[idx] = real_part(f) - imag_part(db);
            strip.d_ss[idx] = real_part(ddb) + imag_part(df);
            strip.d_st[idx] = real_part(df) - imag_part(ddb);
            strip.d_tt[idx] = -1.0 * real_part(ddb) - imag_part(df);
        };
        fill(center, Vec3{});
        // Accumulate the vertical integral outward from the axis, one row at a time.
        Vec3 up;
        Vec3 down;
        for (int k = 1; k <= M_t; ++k) {
            const auto above = static_cast<std::size_t>(center + k);
            const auto below = static_cast<std::size_t>(center - k);
            up += integrate(vertical, strip.t[above - 1], strip.t[above], q);
            down += integrate(vertical, strip.t[below + 1], strip.t[below], q);
            fill(center + k, up);
            fill(center - k, down);
        }
    });
    compute_normals(strip);
    return strip;
}

double TranslatorProfile::curvature(const ProfilePoint& p) const
{
    return convention.sign * (convention.c * std::cos(p.theta) - std::sin(p.theta) / p.r);
}

double TranslatorProfile::min_radius() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
        m = std::min(m, p.r);
    }
    return m;
}

ProfilePoint integrate_profile(const ProfilePoint& start, double length, int n_steps, const ProfileConvention& conv)
{
    if (n_steps < 1) {
        throw DataError("profile integration needs at least one step");
    }
    struct State {
        double r, z, theta;
    };
    auto rhs = [&](const State& y) {
        return State{std::cos(y.theta), std::sin(y.theta),
                     conv.sign * (conv.c * std::cos(y.theta) - std::sin(y.theta) / y.r)};
    };
    auto axpy = [](const State& y, double a, const State& k) {
        return State{y.r + a * k.r, y.z + a * k.z, y.theta + a * k.theta};
    };
    const double h = length / n_steps;
    State y{start.r, start.z, start.theta};
    for (int n = 0; n < n_steps; ++n) {
        const State k1 = rhs(y);
        const State k2 = rhs(axpy(y, 0.5 * h, k1));
        const State k3 = rhs(axpy(y, 0.5 * h, k2));
        const State k4 = rhs(axpy(y, h, k3));
        y.r += h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
        y.z += h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
        y.theta += h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta);
        if (!(y.r > 0.0)) {
            std::ostringstream msg;
            msg << "profile reaches the rotation axis at u = " << start.u + (n + 1) * h;
            throw SolverError(msg.str());
        }
    }
    return {start.u + length, y.r, y.z, y.theta};
}

TranslatorProfile translator_profile_ode(double tau, double u_max, double step, const ProfileConvention& conv)
{
    if (!(tau > 0.0) || !(step > 0.0) || !(u_max > 0.0)) {
        throw DataError("translator profile needs tau > 0, step > 0 and u_max > 0");
    }
    const int n = std::max(1, static_cast<int>(std::lround(u_max / step)));
    const double h = u_max / n;
    TranslatorProfile p;
    p.tau = tau;
    p.step = h;
    p.convention = conv;
    p.points.resize(static_cast<std::size_t>(2 * n + 1));
    const ProfilePoint neck{0.0, tau, 0.0, std::numbers::pi / 2.0};
    p.points[static_cast<std::size_t>(n)] = neck;
    ProfilePoint fwd = neck;
    ProfilePoint bwd = neck;
    for (int k = 1; k <= n; ++k) {
        fwd = integrate_profile(fwd, h, 1, conv);
        bwd = integrate_profile(bwd, -h, 1, conv);
        // Pin u to the sampling grid so that both halves are exact mirrors in u.
        fwd.u = k * h;
        bwd.u = -k * h;
        p.points[static_cast<std::size_t>(n + k)] = fwd;
        p.points[static_cast<std::size_t>(n - k)] = bwd;
    }
    return p;
}

namespace {

struct Hermite {
    double y0, y1, m0, m1, h;

    double value(double x) const
    {
        const double x2 = x * x;
        const double x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * y0 + (x3 - 2 * x2 + x) * h * m0 + (-2 * x3 + 3 * x2) * y1 +
               (x3 - x2) * h * m1;
    }

    double slope(double x) const
    {
        const double x2 = x * x;
        return ((6 * x2 - 6 * x) * y0 + (3 * x2 - 4 * x + 1) * h * m0 + (-6 * x2 + 6 * x) * y1 +
                (3 * x2 - 2 * x) * h * m1);
    }
};

} // namespace

double profile_radius_at_height(const TranslatorProfile& p, double z)
{
    const auto& pts = p.points;
    if (pts.size() < 2) {
        throw DataError("profile has fewer than two samples");
    }
    const bool rising = pts.back().z > pts.front().z;
    auto below = [&](const ProfilePoint& q, double value) { return rising ? q.z < value : q.z > value; };
    const double lo = std::min(pts.front().z, pts.back().z);
    const double hi = std::max(pts.front().z, pts.back().z);
    if (!(z >= lo && z <= hi)) {
        std::ostringstream msg;
        msg << "height " << z << " lies outside the profile range [" << lo << ", " << hi << "]";
        throw DataError(msg.str());
    }
    auto it = std::lower_bound(pts.begin(), pts.end(), z, below);
    std::size_t k1 = static_cast<std::size_t>(it - pts.begin());
    k1 = std::clamp<std::size_t>(k1, 1, pts.size() - 1);
    const ProfilePoint& a = pts[k1 - 1];
    const ProfilePoint& b = pts[k1];
    if ((b.z - a.z) * (rising ? 1.0 : -1.0) <= 0.0) {
        throw DataError("profile height is not monotone near z = " + std::to_string(z));
    }
    const double h = b.u - a.u;
    const Hermite zh{a.z, b.z, std::sin(a.theta), std::sin(b.theta), h};
    const Hermite rh{a.r, b.r, std::cos(a.theta), std::cos(b.theta), h};
    double x = (z - a.z) / (b.z - a.z);
    for (int iter = 0; iter < 50; ++iter) {
        const double dx = (zh.value(x) - z) / zh.slope(x);
        x = std::clamp(x - dx, 0.0, 1.0);
        if (std::abs(dx) < 1e-15) {
            break;
        }
    }
    return rh.value(x);
}

SolutionStrip revolution_strip(const TranslatorProfile& p, int N, int stride)
{
    const int n = static_cast<int>(p.points.size()) / 2;
    if (stride < 1 || n % stride != 0 || p.points.size() % 2 == 0) {
        throw DataError("profile sample count is not compatible with the stride");
    }
    const SGrid g{0.0, 2.0 * std::numbers::pi, N, true};
    g.check();
    SolutionStrip strip;
    strip.allocate(g, n * p.step, n / stride);
    strip.periodicity = Periodicity::periodic(2.0 * std::numbers::pi);
    for (int i = 0; i < strip.rows(); ++i) {
        const ProfilePoint& q = p.points[static_cast<std::size_t>(i * stride)];
        const double ct = std::cos(q.theta);
        const double st = std::sin(q.theta);
        const double kappa = p.curvature(q);
        for (int j = 0; j < N; ++j) {
            const double phi = g.point(j);
            const double cp = std::cos(phi);
            const double sp = std::sin(phi);
            const std::size_t idx = strip.index(j, i);
            strip.pos[idx] = {q.r * cp, q.r * sp, q.z};
            strip.d_s[idx] = {-q.r * sp, q.r * cp, 0.0};
            strip.d_ss[idx] = {-q.r * cp, -q.r * sp, 0.0};
            strip.d_t[idx] = {ct * cp, ct * sp, st};
            strip.d_st[idx] = {-ct * sp, ct * cp, 0.0};
            strip.d_tt[idx] = kappa * Vec3{-st * cp, -st * sp, ct};
        }
    }
    compute_normals(strip);
    return strip;
}

CheckReport translator_comparison(const TranslatorProfile& p, const SolutionStrip& strip, double threshold)
{
    const bool rising = p.points.back().z > p.points.front().z;
    for (std::size_t k = 1; k < p.points.size(); ++k) {
        const double dz = p.points[k].z - p.points[k - 1].z;
        if ((rising ? dz : -dz) <= 0.0) {
            throw DataError("profile height is not monotone; shorten the profile");
        }
    }
    CheckReport r;
    r.name = "translator_profile";
    r.threshold = threshold;
    const int band = strip.grid.boundary_band();
    for (int i = 0; i < strip.rows(); ++i) {
        for (int j = band; j < strip.cols() - band; ++j) {
            const Vec3& x = strip.pos[strip.index(j, i)];
            const double rho = std::hypot(x.x, x.y);
            const double res = std::abs(rho - profile_radius_at_height(p, x.z));
            if (res > r.max_residual || std::isnan(res)) {
                r.max_residual = res;
                r.s = strip.grid.point(j);
                r.t = strip.t[static_cast<std::size_t>(i)];
            }
        }
    }
    r.pass = r.max_residual <= threshold;
    return r;
}

} // namespace bjorling
