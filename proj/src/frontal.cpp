#include "envcf/frontal.hpp"

#include <cmath>

#include "envcf/errors.hpp"
#include "envcf/parallel.hpp"

namespace envcf {

namespace {

constexpr double kContinuityWarn = 0.9;  // nu_k . nu_{k+1} below this gets flagged

Vec2 angle_to_unit(double a) { return {std::cos(a), std::sin(a)}; }

// Shortest-arc interpolation on S^1 between the regular neighbours of an
// interior singular run [i, j].
void fill_singular_run(std::vector<Vec2>& nu, const std::vector<double>& t, int i, int j,
                       int left, int right) {
    const double a0 = std::atan2(nu[left].y, nu[left].x);
    double a1 = std::atan2(nu[right].y, nu[right].x);
    double delta = a1 - a0;
    while (delta > M_PI) delta -= 2.0 * M_PI;
    while (delta < -M_PI) delta += 2.0 * M_PI;
    const double span = t[right] - t[left];
    for (int k = i; k <= j; ++k) {
        const double w = span > 0.0 ? (t[k] - t[left]) / span : 0.5;
        nu[k] = angle_to_unit(a0 + w * delta);
    }
}

}  // namespace

bool frame_at(const Family& family, double t, double eps_sing, Vec2* nu_out, Vec2* mu_out) {
    if (family.has_gauss()) {
        const Vec2 nu = family.gauss(t);
        *nu_out = nu;
        *mu_out = rotate90(nu);
        return true;
    }
    const Vec2 dg = family.dgamma(t);
    const double speed = dg.norm();
    if (speed <= eps_sing) return false;
    const Vec2 nu = -rotate90(dg / speed);
    *nu_out = nu;
    *mu_out = rotate90(nu);
    return true;
}

FrontalData build_frontal(const Family& family) {
    FrontalData out;
    out.grid = family.grid();
    const int n = out.grid.count;
    out.t.resize(n);
    out.gamma.resize(n);
    out.dgamma.resize(n);
    out.nu.resize(n);
    out.mu.resize(n);
    out.ell.assign(n, 0.0);
    out.beta.resize(n);
    out.lambda.resize(n);
    out.dlambda.resize(n);
    out.singular.assign(n, 0);
    out.gauss_symbolic = family.has_gauss();

    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
        const double t = out.grid.t(static_cast<int>(k));
        out.t[k] = t;
        out.gamma[k] = family.gamma(t);
        out.dgamma[k] = family.dgamma(t);
        out.lambda[k] = family.lambda(t);
        out.dlambda[k] = family.dlambda(t);
    });

    double max_speed = 0.0;
    for (int k = 0; k < n; ++k) max_speed = std::max(max_speed, out.dgamma[k].norm());
    out.eps_sing = 1e-8 * (1.0 + max_speed);

    for (int k = 0; k < n; ++k) {
        out.singular[k] = out.dgamma[k].norm() <= out.eps_sing ? 1 : 0;
        if (!out.singular[k] && out.first_regular < 0) out.first_regular = k;
    }

    if (out.gauss_symbolic) {
        parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
            out.nu[k] = family.gauss(out.t[k]);
            out.mu[k] = rotate90(out.nu[k]);
            out.ell[k] = family.dgauss(out.t[k]).dot(out.mu[k]);
        });
    } else {
        if (out.first_regular < 0)
            throw Error(errc::validate,
                        "gamma is constant on the grid; supply nu explicitly (any unit map "
                        "orthogonal to gamma' works)");

        // Tracking pass: anchor at the first regular sample, then keep the
        // candidate sign that maximizes continuity; singular samples carry.
        const int k0 = out.first_regular;
        out.nu[k0] = -rotate90(out.dgamma[k0] / out.dgamma[k0].norm());
        for (int k = k0 + 1; k < n; ++k) {
            if (out.singular[k]) {
                out.nu[k] = out.nu[k - 1];
                continue;
            }
            Vec2 cand = -rotate90(out.dgamma[k] / out.dgamma[k].norm());
            if (cand.dot(out.nu[k - 1]) < 0.0) cand = -cand;
            out.nu[k] = cand;
        }
        for (int k = 0; k < k0; ++k) out.nu[k] = out.nu[k0];

        // Interior singular runs: replace the carried value by shortest-arc
        // interpolation between the bounding regular samples.
        int k = k0 + 1;
        while (k < n) {
            if (!out.singular[k]) {
                ++k;
                continue;
            }
            int j = k;
            while (j + 1 < n && out.singular[j + 1]) ++j;
            if (j + 1 < n) fill_singular_run(out.nu, out.t, k, j, k - 1, j + 1);
            k = j + 1;
        }

        for (int i = 0; i < n; ++i) out.mu[i] = rotate90(out.nu[i]);

        // nu' by central differences of the tracked samples.
        const double h = out.grid.spacing();
        for (int i = 0; i < n; ++i) {
            Vec2 dnu;
            if (i == 0)
                dnu = (out.nu[1] - out.nu[0]) / h;
            else if (i == n - 1)
                dnu = (out.nu[n - 1] - out.nu[n - 2]) / h;
            else
                dnu = (out.nu[i + 1] - out.nu[i - 1]) / (2.0 * h);
            out.ell[i] = dnu.dot(out.mu[i]);
        }

        int sharp_pairs = 0;
        double first_sharp = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            if (out.nu[i].dot(out.nu[i + 1]) < kContinuityWarn) {
                if (sharp_pairs == 0) first_sharp = out.t[i];
                ++sharp_pairs;
            }
        }
        if (sharp_pairs > 0) {
            out.warnings.push_back(
                "Gauss map turns sharply between " + std::to_string(sharp_pairs) +
                " consecutive sample pair(s), first near t = " + std::to_string(first_sharp) +
                "; tracked frame may not certify smoothness");
        }
    }

    for (int i = 0; i < n; ++i) out.beta[i] = out.dgamma[i].dot(out.mu[i]);

    return out;
}

}  // namespace envcf
