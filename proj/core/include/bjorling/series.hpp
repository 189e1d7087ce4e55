// SPDX-License-Identifier: Apache-2.0
#pragma once

// Truncated power series in one variable t, fixed order K.
//
// All arithmetic keeps the order of its operands; mixing orders is a
// programming error and throws. Elementary functions use the usual
// first-order ODE recurrences, O(K^2) per call.

#include "bjorling/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace bjorling {

template <typename T>
class Series {
public:
    using value_type = T;

    Series() = default;

    /// Zero series of the given order.
    explicit Series(int order) : c_(static_cast<std::size_t>(order) + 1, T{}) {}

    /// Constant series c0 + 0 t + ...
    Series(int order, T c0) : Series(order) { c_[0] = c0; }

    /// The identity series t0 + t, i.e. the independent variable shifted to t0.
    static Series variable(int order, T t0 = T{})
    {
        Series s(order, t0);
        if (order >= 1) {
            s.c_[1] = T{1};
        }
        return s;
    }

    static Series from_coefficients(std::vector<T> coeffs)
    {
        if (coeffs.empty()) {
            throw std::invalid_argument("Series: empty coefficient list");
        }
        Series s;
        s.c_ = std::move(coeffs);
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    T& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    const T& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    std::span<const T> coefficients() const { return c_; }

    /// Horner evaluation at t.
    T operator()(T t) const
    {
        T acc{};
        for (int k = order(); k >= 0; --k) {
            acc = acc * t + c_[static_cast<std::size_t>(k)];
        }
        return acc;
    }

    /// Same coefficients, truncated (or zero-extended) to a new order.
    Series with_order(int order) const
    {
        Series r(order);
        for (int k = 0; k <= std::min(order, this->order()); ++k) {
            r[k] = (*this)[k];
        }
        return r;
    }

    Series& operator+=(const Series& o)
    {
        check_same_order(o);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            c_[k] += o.c_[k];
        }
        return *this;
    }
    Series& operator-=(const Series& o)
    {
        check_same_order(o);
        for (std::size_t k = 0; k < c_.size(); ++k) {
            c_[k] -= o.c_[k];
        }
        return *this;
    }
    Series& operator*=(T a)
    {
        for (auto& v : c_) {
            v *= a;
        }
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator*(Series a, T s) { return a *= s; }
    friend Series operator*(T s, Series a) { return a *= s; }
    friend Series operator-(Series a)
    {
        for (auto& v : a.c_) {
            v = -v;
        }
        return a;
    }

    /// Cauchy product truncated at the common order.
    friend Series operator*(const Series& a, const Series& b)
    {
        a.check_same_order(b);
        const int K = a.order();
        Series r(K);
        for (int k = 0; k <= K; ++k) {
            T acc{};
            for (int j = 0; j <= k; ++j) {
                acc += a[j] * b[k - j];
            }
            r[k] = acc;
        }
        return r;
    }

    friend Series operator/(const Series& a, const Series& b)
    {
        a.check_same_order(b);
        if (b[0] == T{}) {
            throw EvalError("series division by a series with zero constant term");
        }
        const int K = a.order();
        Series q(K);
        for (int k = 0; k <= K; ++k) {
            T acc = a[k];
            for (int j = 1; j <= k; ++j) {
                acc -= b[j] * q[k - j];
            }
            q[k] = acc / b[0];
        }
        return q;
    }

private:
    void check_same_order(const Series& o) const
    {
        if (o.c_.size() != c_.size()) {
            throw std::invalid_argument("Series: order mismatch");
        }
    }

    std::vector<T> c_;
};

using RealSeries = Series<double>;

template <typename T>
Series<T> sqrt(const Series<T>& u)
{
    using std::sqrt;
    if (u[0] == T{}) {
        throw EvalError("series sqrt of a series with zero constant term");
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (u[0] < T{}) {
            throw EvalError("series sqrt of a series with negative constant term");
        }
    }
    const int K = u.order();
    Series<T> y(K);
    y[0] = sqrt(u[0]);
    for (int k = 1; k <= K; ++k) {
        T acc = u[k];
        for (int j = 1; j < k; ++j) {
            acc -= y[j] * y[k - j];
        }
        y[k] = acc / (T{2} * y[0]);
    }
    return y;
}

template <typename T>
Series<T> exp(const Series<T>& u)
{
    using std::exp;
    const int K = u.order();
    Series<T> y(K);
    y[0] = exp(u[0]);
    for (int k = 1; k <= K; ++k) {
        T acc{};
        for (int j = 1; j <= k; ++j) {
            acc += static_cast<double>(j) * u[j] * y[k - j];
        }
        y[k] = acc / static_cast<double>(k);
    }
    return y;
}

/// sin and cos of u, propagated as a coupled pair. `hyperbolic` selects
/// sinh/cosh, whose recurrence differs only in one sign.
template <typename T>
std::array<Series<T>, 2> sin_cos_pair(const Series<T>& u, bool hyperbolic)
{
    using std::cos;
    using std::cosh;
    using std::sin;
    using std::sinh;
    const int K = u.order();
    Series<T> s(K);
    Series<T> c(K);
    s[0] = hyperbolic ? sinh(u[0]) : sin(u[0]);
    c[0] = hyperbolic ? cosh(u[0]) : cos(u[0]);
    const double sign = hyperbolic ? 1.0 : -1.0;
    for (int k = 1; k <= K; ++k) {
        T as{};
        T ac{};
        for (int j = 1; j <= k; ++j) {
            const T ju = static_cast<double>(j) * u[j];
            as += ju * c[k - j];
            ac += ju * s[k - j];
        }
        s[k] = as / static_cast<double>(k);
        c[k] = sign * ac / static_cast<double>(k);
    }
    return {s, c};
}

template <typename T>
Series<T> sin(const Series<T>& u) { return sin_cos_pair(u, false)[0]; }
template <typename T>
Series<T> cos(const Series<T>& u) { return sin_cos_pair(u, false)[1]; }
template <typename T>
Series<T> sinh(const Series<T>& u) { return sin_cos_pair(u, true)[0]; }
template <typename T>
Series<T> cosh(const Series<T>& u) { return sin_cos_pair(u, true)[1]; }

/// Non-negative integer power by repeated squaring.
template <typename T>
Series<T> pow(const Series<T>& u, int n)
{
    Series<T> result(u.order(), T{1});
    Series<T> base = u;
    while (n > 0) {
        if (n & 1) {
            result = result * base;
        }
        n >>= 1;
        if (n > 0) {
            base = base * base;
        }
    }
    return result;
}

/// Vector-valued series: three component series of a common order.
using Series3 = std::array<RealSeries, 3>;

inline Series3 make_series3(int order)
{
    return {RealSeries(order), RealSeries(order), RealSeries(order)};
}

inline Series3 cross(const Series3& a, const Series3& b)
{
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline RealSeries dot(const Series3& a, const Series3& b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

} // namespace bjorling
