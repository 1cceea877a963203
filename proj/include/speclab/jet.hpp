#pragma once

#include <Eigen/Core>

#include <array>
#include <cmath>

namespace speclab {

/// Second-order forward-mode number in (at most) two chart variables:
/// value, gradient and Hessian propagated exactly through arithmetic.
struct Jet {
    double v = 0.0;
    Eigen::Vector2d d = Eigen::Vector2d::Zero();
    Eigen::Matrix2d dd = Eigen::Matrix2d::Zero();

    Jet() = default;
    Jet(double value) : v(value) {}  // NOLINT: implicit lift of constants

    static Jet variable(double value, int index)
    {
        Jet j(value);
        j.d[index] = 1.0;
        return j;
    }

    Jet& operator+=(const Jet& o)
    {
        v += o.v;
        d += o.d;
        dd += o.dd;
        return *this;
    }
    Jet& operator-=(const Jet& o)
    {
        v -= o.v;
        d -= o.d;
        dd -= o.dd;
        return *this;
    }
};

using JetPoint = std::array<Jet, 2>;

/// Seeds the identity jets for a chart point.
inline JetPoint seed(const Eigen::Vector2d& xi) { return {Jet::variable(xi[0], 0), Jet::variable(xi[1], 1)}; }

namespace detail {

// phi(f) with phi' = d1, phi'' = d2 at f.v
inline Jet compose(const Jet& f, double value, double d1, double d2)
{
    Jet r(value);
    r.d = d1 * f.d;
    r.dd = d2 * (f.d * f.d.transpose()) + d1 * f.dd;
    return r;
}

}  // namespace detail

inline Jet operator-(const Jet& a)
{
    Jet r;
    r.v = -a.v;
    r.d = -a.d;
    r.dd = -a.dd;
    return r;
}

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }

inline Jet operator*(const Jet& a, const Jet& b)
{
    Jet r(a.v * b.v);
    r.d = a.d * b.v + b.d * a.v;
    r.dd = a.dd * b.v + b.dd * a.v + a.d * b.d.transpose() + b.d * a.d.transpose();
    return r;
}

inline Jet reciprocal(const Jet& a)
{
    const double inv = 1.0 / a.v;
    return detail::compose(a, inv, -inv * inv, 2.0 * inv * inv * inv);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

inline Jet sin(const Jet& a) { return detail::compose(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
inline Jet cos(const Jet& a) { return detail::compose(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
inline Jet sinh(const Jet& a) { return detail::compose(a, std::sinh(a.v), std::cosh(a.v), std::sinh(a.v)); }
inline Jet cosh(const Jet& a) { return detail::compose(a, std::cosh(a.v), std::sinh(a.v), std::cosh(a.v)); }

inline Jet exp(const Jet& a)
{
    const double e = std::exp(a.v);
    return detail::compose(a, e, e, e);
}

inline Jet log(const Jet& a) { return detail::compose(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }

inline Jet sqrt(const Jet& a)
{
    const double s = std::sqrt(a.v);
    return detail::compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet pow(const Jet& a, double p)
{
    if (p == 0.0) return Jet(1.0);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    const double pm2 = std::pow(a.v, p - 2.0);
    return detail::compose(a, pm2 * a.v * a.v, p * pm2 * a.v, p * (p - 1.0) * pm2);
}

inline Jet pow(const Jet& a, const Jet& b)
{
    if (b.d.isZero(0.0) && b.dd.isZero(0.0)) return pow(a, b.v);
    return exp(b * log(a));
}

}  // namespace speclab
