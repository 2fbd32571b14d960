#pragma once

// Not-a-knot interpolating cubic spline through strictly increasing knots.
// Exact derivative from the piece coefficients.

#include <vector>

namespace envcf {

class CubicSpline {
public:
    CubicSpline() = default;
    // Requires xs strictly increasing, xs.size() == ys.size() >= 2.
    CubicSpline(std::vector<double> xs, std::vector<double> ys);

    double value(double x) const;
    double derivative(double x) const;

    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }

private:
    int piece(double x) const;

    std::vector<double> xs_;
    std::vector<double> a_, b_, c_, d_;  // per piece: a + b*dx + c*dx^2 + d*dx^3
};

}  // namespace envcf
