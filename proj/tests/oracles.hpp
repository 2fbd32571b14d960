#pragma once

// Test-side oracles, kept independent of the implementation paths they
// check: finite differences for the symbolic derivative, a dense circle
// scan for the discriminant slices, and Fermat-principle ray tracing for
// the seismic synthetics.

#include <functional>
#include <string>
#include <vector>

#include "envcf/discriminant.hpp"
#include "envcf/expr.hpp"
#include "envcf/family.hpp"

namespace oracles {

// (f(t+h) - f(t-h)) / 2h using plain expression evaluation.
double central_difference(const envcf::Expr& e, double t, double h = 1e-5);

struct OracleSlice {
    envcf::SliceKind kind = envcf::SliceKind::empty;
    std::vector<envcf::Vec2> points;
};

// Dense scan of |dF/dt| <= tol over points of the circle C(gamma(t), lambda(t)),
// clustered into solution arcs. No frame reduction involved.
OracleSlice brute_force_slice(const envcf::Family& family, double t, int scan_points = 1000000);

// A reflector graph y = Y(x) below the sensor line.
struct Reflector {
    std::function<double(double)> height;
    std::function<double(double)> slope;

    // Reflection point: minimizes |A - m(x)| + |m(x) - sensor| (Fermat).
    double reflection_x(envcf::Vec2 source, envcf::Vec2 sensor) const;
    double path_length(envcf::Vec2 source, envcf::Vec2 sensor, double* x_star = nullptr) const;
    envcf::Vec2 point(double x) const { return {x, height(x)}; }
    // Mirror image of the source in the tangent line at x.
    envcf::Vec2 orthotomic_point(envcf::Vec2 source, double x) const;
};

Reflector flat_reflector(double depth_y);  // y = depth_y
Reflector parabola_reflector();            // y = -1 - x^2/8

// Survey CSV (header + rows) for sensors (t, 0), t in linspace[lo, hi],
// with exact reflection travel times; optional per-row uniform time noise
// in [-noise, +noise] from the seeded generator.
std::string synthetic_survey_csv(const Reflector& reflector, envcf::Vec2 source, double speed,
                                 double lo, double hi, int sensors, double noise = 0.0,
                                 unsigned long long seed = 0);

}  // namespace oracles
