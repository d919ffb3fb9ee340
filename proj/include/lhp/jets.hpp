#pragma once

// Two-direction forward-mode dual numbers.

#include <cmath>
#include <ostream>
#include <utility>

#include "lhp/errors.hpp"

namespace lhp {

using std::abs;
using std::cos;
using std::cosh;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sinh;
using std::sqrt;
using std::tan;

/// Value with its partial derivatives along x and y.
struct Jet2 {
    double val = 0.0;
    double dx = 0.0;
    double dy = 0.0;

    constexpr Jet2() = default;
    constexpr Jet2(double v) : val(v) {}  // NOLINT: constants lift implicitly
    constexpr Jet2(double v, double gx, double gy) : val(v), dx(gx), dy(gy) {}

    constexpr Jet2& operator+=(const Jet2& o) {
        val += o.val;
        dx += o.dx;
        dy += o.dy;
        return *this;
    }
    constexpr Jet2& operator-=(const Jet2& o) {
        val -= o.val;
        dx -= o.dx;
        dy -= o.dy;
        return *this;
    }
    constexpr Jet2& operator*=(const Jet2& o) {
        dx = val * o.dx + dx * o.val;
        dy = val * o.dy + dy * o.val;
        val *= o.val;
        return *this;
    }
    constexpr Jet2& operator/=(const Jet2& o) {
        const double q = val / o.val;
        dx = (dx - q * o.dx) / o.val;
        dy = (dy - q * o.dy) / o.val;
        val = q;
        return *this;
    }
};

/// Coordinate jets at (x, y): (x,1,0) and (y,0,1).
constexpr std::pair<Jet2, Jet2> seed(double x, double y) {
    return {Jet2{x, 1.0, 0.0}, Jet2{y, 0.0, 1.0}};
}

constexpr double value_of(double v) { return v; }
constexpr double value_of(const Jet2& j) { return j.val; }

constexpr Jet2 operator+(Jet2 a) { return a; }
constexpr Jet2 operator-(Jet2 a) { return {-a.val, -a.dx, -a.dy}; }
constexpr Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
constexpr Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
constexpr Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
constexpr Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
constexpr Jet2 operator+(Jet2 a, double b) { return {a.val + b, a.dx, a.dy}; }
constexpr Jet2 operator+(double a, Jet2 b) { return {a + b.val, b.dx, b.dy}; }
constexpr Jet2 operator-(Jet2 a, double b) { return {a.val - b, a.dx, a.dy}; }
constexpr Jet2 operator-(double a, Jet2 b) { return {a - b.val, -b.dx, -b.dy}; }
constexpr Jet2 operator*(Jet2 a, double b) { return {a.val * b, a.dx * b, a.dy * b}; }
constexpr Jet2 operator*(double a, Jet2 b) { return {a * b.val, a * b.dx, a * b.dy}; }
constexpr Jet2 operator/(Jet2 a, double b) { return {a.val / b, a.dx / b, a.dy / b}; }
constexpr Jet2 operator/(double a, const Jet2& b) { return Jet2{a} / b; }

constexpr bool operator<(const Jet2& a, const Jet2& b) { return a.val < b.val; }
constexpr bool operator>(const Jet2& a, const Jet2& b) { return a.val > b.val; }

inline std::ostream& operator<<(std::ostream& os, const Jet2& j) {
    return os << '(' << j.val << ", " << j.dx << ", " << j.dy << ')';
}

namespace detail {
// Chain rule: f(a) with f'(a) = d.
constexpr Jet2 chain(const Jet2& a, double f, double d) { return {f, d * a.dx, d * a.dy}; }
}  // namespace detail

inline Jet2 exp(const Jet2& a) {
    const double e = std::exp(a.val);
    return detail::chain(a, e, e);
}

inline Jet2 log(const Jet2& a) {
    if (!(a.val > 0.0)) throw DomainError("log of non-positive jet");
    return detail::chain(a, std::log(a.val), 1.0 / a.val);
}

inline Jet2 sin(const Jet2& a) { return detail::chain(a, std::sin(a.val), std::cos(a.val)); }
inline Jet2 cos(const Jet2& a) { return detail::chain(a, std::cos(a.val), -std::sin(a.val)); }
inline Jet2 tan(const Jet2& a) {
    const double t = std::tan(a.val);
    return detail::chain(a, t, 1.0 + t * t);
}
inline Jet2 sinh(const Jet2& a) { return detail::chain(a, std::sinh(a.val), std::cosh(a.val)); }
inline Jet2 cosh(const Jet2& a) { return detail::chain(a, std::cosh(a.val), std::sinh(a.val)); }

inline Jet2 sqrt(const Jet2& a) {
    if (!(a.val > 0.0)) throw DomainError("sqrt of non-positive jet");
    const double s = std::sqrt(a.val);
    return detail::chain(a, s, 0.5 / s);
}

/// Real power. Integer exponents are allowed at any base; fractional ones need a positive base.
inline Jet2 pow(const Jet2& a, double e) {
    if (e == 0.0) return Jet2{1.0};
    const bool integral = std::trunc(e) == e;
    if (!integral && !(a.val > 0.0)) throw DomainError("fractional power of non-positive jet");
    if (integral && e < 0.0 && a.val == 0.0) throw DomainError("negative power of zero jet");
    return detail::chain(a, std::pow(a.val, e), e * std::pow(a.val, e - 1.0));
}
inline Jet2 pow(const Jet2& a, int e) { return pow(a, static_cast<double>(e)); }

inline Jet2 abs(const Jet2& a) { return a.val < 0.0 ? -a : a; }

}  // namespace lhp
