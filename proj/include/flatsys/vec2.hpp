#pragma once

#include <cmath>
#include <numbers>

namespace flatsys {

/// Planar vector; used both for positions in a developed chart and for holonomies.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
    constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
    constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

inline Vec2 rotated(Vec2 v, double theta)
{
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Signed angle from a to b in (-pi, pi].
inline double signed_angle(Vec2 a, Vec2 b)
{
    return std::atan2(cross(a, b), dot(a, b));
}

/// Angle swept counterclockwise from a to b, in [0, 2pi).
inline double ccw_angle(Vec2 a, Vec2 b)
{
    double t = signed_angle(a, b);
    if (t < 0) t += 2.0 * std::numbers::pi;
    return t;
}

inline bool near(Vec2 a, Vec2 b, double tol) { return (a - b).norm() <= tol; }

/// Canonical orientation of an unoriented segment: y > 0, or y == 0 and x > 0.
inline bool is_canonical_direction(Vec2 v, double tol = 1e-12)
{
    if (v.y > tol) return true;
    if (v.y < -tol) return false;
    return v.x > 0;
}

/// Shoelace signed area of a closed polygon given by its vertices.
template <class Range>
double shoelace(const Range& pts)
{
    double a = 0.0;
    const auto n = std::size(pts);
    for (std::size_t i = 0; i < n; ++i) a += cross(pts[i], pts[(i + 1) % n]);
    return 0.5 * a;
}

} // namespace flatsys
