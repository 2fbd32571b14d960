#include "envcf/spline.hpp"

#include <algorithm>
#include <cmath>

#include "envcf/errors.hpp"

namespace envcf {

// Not-a-knot cubic spline. Unknowns are the knot second derivatives m_i;
// the boundary conditions m_0 = (1+h0/h1) m_1 - (h0/h1) m_2 (third
// derivative continuous across the first interior knot) and its mirror are
// substituted into the first and last interior equations, leaving a
// tridiagonal system in m_1 .. m_{n-2}.
CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys) : xs_(std::move(xs)) {
    const int n = static_cast<int>(xs_.size());
    if (n < 2 || ys.size() != xs_.size())
        throw Error(errc::invalid_arg, "spline needs >= 2 knots with matching values");
    for (int i = 0; i + 1 < n; ++i)
        if (!(xs_[i] < xs_[i + 1]))
            throw Error(errc::invalid_arg, "spline knots must be strictly increasing");

    const int pieces = n - 1;
    a_.resize(pieces);
    b_.resize(pieces);
    c_.resize(pieces);
    d_.resize(pieces);

    if (n == 2) {
        const double slope = (ys[1] - ys[0]) / (xs_[1] - xs_[0]);
        a_[0] = ys[0];
        b_[0] = slope;
        c_[0] = d_[0] = 0.0;
        return;
    }

    std::vector<double> h(pieces);
    for (int i = 0; i < pieces; ++i) h[i] = xs_[i + 1] - xs_[i];

    std::vector<double> m(n, 0.0);
    if (n == 3) {
        // Both not-a-knot conditions collapse; use the parabola through the
        // three points (constant second derivative).
        const double s0 = (ys[1] - ys[0]) / h[0];
        const double s1 = (ys[2] - ys[1]) / h[1];
        const double curv = 2.0 * (s1 - s0) / (h[0] + h[1]);
        m[0] = m[1] = m[2] = curv;
    } else {
        const int unknowns = n - 2;  // m_1 .. m_{n-2}
        std::vector<double> sub(unknowns, 0.0), diag(unknowns, 0.0), sup(unknowns, 0.0),
            rhs(unknowns, 0.0);
        for (int i = 1; i <= n - 2; ++i) {
            const int r = i - 1;
            sub[r] = h[i - 1];
            diag[r] = 2.0 * (h[i - 1] + h[i]);
            sup[r] = h[i];
            rhs[r] = 6.0 * ((ys[i + 1] - ys[i]) / h[i] - (ys[i] - ys[i - 1]) / h[i - 1]);
        }
        // Substitute m_0 into the first row and m_{n-1} into the last.
        diag[0] += h[0] + h[0] * h[0] / h[1];
        sup[0] -= h[0] * h[0] / h[1];
        sub[0] = 0.0;
        const int last = unknowns - 1;
        diag[last] += h[pieces - 1] + h[pieces - 1] * h[pieces - 1] / h[pieces - 2];
        sub[last] -= h[pieces - 1] * h[pieces - 1] / h[pieces - 2];
        sup[last] = 0.0;

        // Thomas algorithm.
        std::vector<double> cp(unknowns, 0.0), dp(unknowns, 0.0);
        cp[0] = sup[0] / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (int r = 1; r < unknowns; ++r) {
            const double denom = diag[r] - sub[r] * cp[r - 1];
            cp[r] = r + 1 < unknowns ? sup[r] / denom : 0.0;
            dp[r] = (rhs[r] - sub[r] * dp[r - 1]) / denom;
        }
        m[unknowns] = dp[unknowns - 1];
        for (int r = unknowns - 2; r >= 0; --r) m[r + 1] = dp[r] - cp[r] * m[r + 2];

        m[0] = (1.0 + h[0] / h[1]) * m[1] - (h[0] / h[1]) * m[2];
        m[n - 1] = (1.0 + h[pieces - 1] / h[pieces - 2]) * m[n - 2] -
                   (h[pieces - 1] / h[pieces - 2]) * m[n - 3];
    }

    for (int i = 0; i < pieces; ++i) {
        a_[i] = ys[i];
        c_[i] = m[i] / 2.0;
        d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
        b_[i] = (ys[i + 1] - ys[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    }
}

int CubicSpline::piece(double x) const {
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    int i = static_cast<int>(it - xs_.begin()) - 1;
    i = std::clamp(i, 0, static_cast<int>(a_.size()) - 1);
    return i;
}

double CubicSpline::value(double x) const {
    const int i = piece(x);
    const double dx = x - xs_[i];
    return a_[i] + dx * (b_[i] + dx * (c_[i] + dx * d_[i]));
}

double CubicSpline::derivative(double x) const {
    const int i = piece(x);
    const double dx = x - xs_[i];
    return b_[i] + dx * (2.0 * c_[i] + 3.0 * dx * d_[i]);
}

}  // namespace envcf
