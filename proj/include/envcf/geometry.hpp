#pragma once

#include <cmath>

namespace envcf {

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

    constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
    constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm2() const { return x * x + y * y; }
    Vec2 normalized() const {
        const double n = norm();
        return {x / n, y / n};
    }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }

// Anti-clockwise rotation by pi/2.
constexpr Vec2 rotate90(Vec2 v) { return {-v.y, v.x}; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Open parameter interval (a, b).
struct Interval {
    double a = 0.0;
    double b = 0.0;
    double width() const { return b - a; }
    bool contains(double t) const { return t > a && t < b; }
};

// Midpoint sample grid over an open interval: t_k = a + (k+1/2)(b-a)/n,
// k = 0..n-1. Endpoints are never evaluated.
struct SampleGrid {
    Interval interval;
    int count = 0;

    double spacing() const { return interval.width() / count; }
    double t(int k) const { return interval.a + (k + 0.5) * spacing(); }
};

}  // namespace envcf
