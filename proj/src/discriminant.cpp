#include "envcf/discriminant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "envcf/errors.hpp"
#include "envcf/parallel.hpp"

namespace envcf {

namespace {

constexpr double kTangencyTol = 1e-12;   // relative to r1 + r2 + d
constexpr double kCosClampBand = 1e-9;   // same clamp as the creative condition

double fit_slope(const std::vector<double>& log_eps, const std::vector<double>& log_dist) {
    // Least-squares slope of log(dist) against log|eps|.
    const std::size_t n = log_eps.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += log_eps[i];
        sy += log_dist[i];
        sxx += log_eps[i] * log_eps[i];
        sxy += log_eps[i] * log_dist[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

CircleIntersection circle_circle_intersect(Vec2 c1, double r1, Vec2 c2, double r2) {
    if (!(r1 > 0.0) || !(r2 > 0.0))
        throw Error(errc::invalid_arg, "circle radii must be positive");
    CircleIntersection out;
    const Vec2 delta = c2 - c1;
    const double d = delta.norm();
    const double scale = r1 + r2 + d;
    const double tol = kTangencyTol * scale;

    if (d <= tol && std::abs(r1 - r2) <= tol) {
        out.kind = IntersectKind::coincident;
        return out;
    }
    if (d <= tol) {  // concentric, different radii
        out.kind = IntersectKind::empty;
        return out;
    }

    const bool tangent =
        std::abs(d - (r1 + r2)) <= tol || std::abs(d - std::abs(r1 - r2)) <= tol;
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const Vec2 axis = delta / d;
    const Vec2 foot = c1 + a * axis;
    if (tangent) {
        out.kind = IntersectKind::tangent;
        out.p1 = foot;
        return out;
    }
    const double h2 = r1 * r1 - a * a;
    if (h2 < 0.0) {
        out.kind = IntersectKind::empty;
        return out;
    }
    const double h = std::sqrt(h2);
    const Vec2 up = rotate90(axis);
    out.kind = IntersectKind::pair;
    out.p1 = foot + h * up;
    out.p2 = foot - h * up;
    return out;
}

DiscriminantSlice discriminant_slice(const Family& family, const FrontalData& frontal,
                                     double t, double eps_beta) {
    DiscriminantSlice slice;
    slice.t = t;
    const double eps = eps_beta > 0.0 ? eps_beta : frontal.eps_sing;
    const double dlam = family.dlambda(t);

    Vec2 nu, mu;
    if (!frame_at(family, t, eps, &nu, &mu)) {
        // gamma'(t) ~ 0: the dF/dt equation degenerates to dlambda = 0.
        if (std::abs(dlam) <= eps) {
            slice.kind = SliceKind::full_circle;
            slice.center = family.gamma(t);
            slice.radius = family.lambda(t);
        } else {
            slice.kind = SliceKind::empty;
        }
        return slice;
    }

    const double beta = family.dgamma(t).dot(mu);
    if (std::abs(beta) <= eps) {
        if (std::abs(dlam) <= eps) {
            slice.kind = SliceKind::full_circle;
            slice.center = family.gamma(t);
            slice.radius = family.lambda(t);
        } else {
            slice.kind = SliceKind::empty;
        }
        return slice;
    }

    // Writing p = gamma + lambda u with u unit, F = dF/dt = 0 reduces to
    // beta (u . mu) = -dlambda.
    const double rho = -dlam / beta;
    const Vec2 g = family.gamma(t);
    const double lam = family.lambda(t);
    if (std::abs(rho) > 1.0 + kCosClampBand) {
        slice.kind = SliceKind::empty;
        return slice;
    }
    if (std::abs(rho) >= 1.0 - kCosClampBand) {
        slice.kind = SliceKind::tangent;
        slice.p1 = g + lam * (std::copysign(1.0, rho) * mu);
        return slice;
    }
    const double s = std::sqrt(1.0 - rho * rho);
    slice.kind = SliceKind::pair;
    slice.p1 = g + lam * (rho * mu + s * nu);
    slice.p2 = g + lam * (rho * mu - s * nu);
    return slice;
}

const char* to_string(SliceKind kind) {
    switch (kind) {
        case SliceKind::empty:
            return "Empty";
        case SliceKind::tangent:
            return "Tangent";
        case SliceKind::pair:
            return "Pair";
        case SliceKind::full_circle:
            return "FullCircle";
    }
    return "?";
}

DiscriminantSet discriminant_set(const Family& family, const FrontalData& frontal,
                                 const CreativityReport& report,
                                 const std::vector<EnvelopeBranch>& branches, double match_tol) {
    if (!report.creative())
        throw Error(errc::not_creative,
                    "discriminant decomposition requires a creative family; classification is "
                    "NotCreative with witness t = " +
                        std::to_string(report.witness_t));

    const int n = frontal.size();
    DiscriminantSet out;
    out.slices.resize(n);
    parallel_for(static_cast<std::size_t>(n), [&](std::size_t k) {
        out.slices[k] = discriminant_slice(family, frontal, frontal.t[k], report.eps_beta);
    });

    for (int k = 0; k < n; ++k) {
        const DiscriminantSlice& slice = out.slices[k];
        if (slice.kind == SliceKind::full_circle) {
            out.full_circle_ts.push_back(slice.t);
            continue;
        }
        for (int p = 0; p < slice.point_count(); ++p) {
            const Vec2 pt = p == 0 ? slice.p1 : slice.p2;
            double best = std::numeric_limits<double>::infinity();
            for (const EnvelopeBranch& br : branches)
                best = std::min(best, distance(pt, br.point[k]));
            if (best <= match_tol)
                ++out.matched_points;
            else
                out.unmatched.push_back({slice.t, pt, best});
        }
    }
    return out;
}

E1Result e1_limit(const Family& family, const FrontalData& frontal, double t0,
                  const E1Options& options) {
    if (!family.interval().contains(t0))
        throw Error(errc::invalid_arg, "t0 outside the parameter interval");
    E1Result out;
    out.t0 = t0;

    std::vector<double> eps_sorted(options.eps);
    std::sort(eps_sorted.begin(), eps_sorted.end(), std::greater<double>());

    const std::vector<Vec2> targets = envelope_points_at(family, frontal, t0);
    const Vec2 c0 = family.gamma(t0);
    const double r0 = family.lambda(t0);
    const double target_scale = 1.0;

    // One tracked branch per side of the center line, per sign of eps.
    for (int dir : {+1, -1}) {
        if (dir < 0 && !options.negatives) break;
        // side -> steps
        std::vector<E1Step> side_a, side_b;
        bool any = false;
        for (double e : eps_sorted) {
            const double eps = dir * e;
            const double t1 = t0 + eps;
            if (!family.interval().contains(t1)) {
                out.notes.push_back("t0 + eps outside I for eps = " + std::to_string(eps));
                continue;
            }
            const Vec2 c1 = family.gamma(t1);
            const double r1 = family.lambda(t1);
            CircleIntersection isect;
            try {
                isect = circle_circle_intersect(c0, r0, c1, r1);
            } catch (const Error&) {
                continue;
            }
            if (isect.kind == IntersectKind::coincident) {
                out.coincident = true;
                out.notes.push_back("circles at t0 and t0 + " + std::to_string(eps) +
                                    " coincide; E1 construction degenerate");
                continue;
            }
            if (isect.kind == IntersectKind::empty) {
                out.notes.push_back("nearby circles do not meet at eps = " + std::to_string(eps));
                continue;
            }
            any = true;
            // Assign by the side of the oriented line c0 -> c1 so the two
            // tracks never swap; tangency collapses both onto the foot.
            auto side_of = [&](Vec2 p) { return (c1 - c0).cross(p - c0); };
            if (isect.kind == IntersectKind::tangent) {
                side_a.push_back({eps, IntersectKind::tangent, isect.p1, 0.0});
                side_b.push_back({eps, IntersectKind::tangent, isect.p1, 0.0});
            } else {
                Vec2 pa = isect.p1, pb = isect.p2;
                if (side_of(pa) < side_of(pb)) std::swap(pa, pb);
                side_a.push_back({eps, IntersectKind::pair, pa, 0.0});
                side_b.push_back({eps, IntersectKind::pair, pb, 0.0});
            }
        }
        if (!any) continue;

        for (std::vector<E1Step>* steps : {&side_a, &side_b}) {
            if (steps->empty()) continue;
            E1Track track;
            track.direction = dir;
            track.steps = *steps;

            // Match the track to the nearest envelope point at t0.
            const Vec2 last = track.steps.back().point;
            double best = std::numeric_limits<double>::infinity();
            for (const Vec2& f : targets) {
                const double d = distance(last, f);
                if (d < best) {
                    best = d;
                    track.target = f;
                }
            }
            if (targets.empty()) track.target = last;

            // Radical-line intersections of nearly identical circles carry
            // an O(eps_mach * scale / d) error; distances below that floor
            // are roundoff, not convergence data.
            const double floor = 1e-10 * (target_scale + track.target.norm() + r0);
            std::vector<double> lx, ly;
            for (E1Step& s : track.steps) {
                s.distance = distance(s.point, track.target);
                if (s.distance > floor) {
                    lx.push_back(std::log(std::abs(s.eps)));
                    ly.push_back(std::log(s.distance));
                }
            }
            track.final_distance = track.steps.back().distance;
            if (lx.size() >= 2) {
                track.fitted_order = fit_slope(lx, ly);
            } else {
                track.at_floor = true;
                track.fitted_order = std::numeric_limits<double>::infinity();
            }

            // First-order Richardson extrapolation from the two smallest eps:
            // p(eps) = L + c eps + O(eps^2).
            const std::size_t m = track.steps.size();
            if (m >= 2) {
                const E1Step& fine = track.steps[m - 1];
                const E1Step& coarse = track.steps[m - 2];
                const double de = coarse.eps - fine.eps;
                if (de != 0.0) {
                    const Vec2 c = (coarse.point - fine.point) / de;
                    track.extrapolated = fine.point - fine.eps * c;
                } else {
                    track.extrapolated = fine.point;
                }
            } else {
                track.extrapolated = track.steps.back().point;
            }
            track.extrapolated_distance = distance(track.extrapolated, track.target);
            out.tracks.push_back(std::move(track));
        }
    }
    return out;
}

}  // namespace envcf
