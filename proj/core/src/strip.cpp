// SPDX-License-Identifier: Apache-2.0
#include "bjorling/strip.hpp"

#include "bjorling/errors.hpp"

#include <cmath>
#include <sstream>

namespace bjorling {

void SolutionStrip::allocate(const SGrid& g, double delta_, int m_t)
{
    grid = g;
    delta = delta_;
    M_t = m_t;
    t.resize(static_cast<std::size_t>(rows()));
    for (int i = 0; i < rows(); ++i) {
        // (i - M) * (delta / M) makes t symmetric about the center row bit-for-bit.
        t[static_cast<std::size_t>(i)] = m_t == 0 ? 0.0 : (i - m_t) * (delta / m_t);
    }
    const std::size_t n = static_cast<std::size_t>(rows()) * static_cast<std::size_t>(g.N);
    for (auto* f : {&pos, &d_s, &d_t, &d_ss, &d_st, &d_tt, &normal}) {
        f->assign(n, Vec3{});
    }
}

namespace {

long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

} // namespace

Vec3 SolutionStrip::position_unwrapped(long j, int i) const
{
    const long n = grid.N;
    const long wraps = floor_div(j, n);
    const long jj = j - wraps * n;
    return pos[index(static_cast<int>(jj), i)] + static_cast<double>(wraps) * drift;
}

Vec3 SolutionStrip::normal_unwrapped(long j, int i) const
{
    const long n = grid.N;
    const long jj = j - floor_div(j, n) * n;
    return normal[index(static_cast<int>(jj), i)];
}

void compute_normals(SolutionStrip& strip, double min_cross)
{
    for (int i = 0; i < strip.rows(); ++i) {
        for (int j = 0; j < strip.cols(); ++j) {
            const std::size_t idx = strip.index(j, i);
            const Vec3 c = cross(strip.d_s[idx], strip.d_t[idx]);
            const double len = norm(c);
            if (!(len >= min_cross)) {
                std::ostringstream msg;
                msg << "immersion degenerates at (s, t) = (" << strip.grid.point(j) << ", "
                    << strip.t[static_cast<std::size_t>(i)] << "): |psi_s ^ psi_t| = " << len;
                throw SolverError(msg.str());
            }
            strip.normal[idx] = c / len;
        }
    }
}

} // namespace bjorling
