#pragma once

// The discriminant of F(x,y,t) = ||(x,y)-gamma(t)||^2 - lambda(t)^2, sliced
// per parameter, its decomposition into envelope points plus full circles at
// singular parameters, and the limiting-intersection construction whose
// limits coincide with the envelope.

#include <string>
#include <vector>

#include "envcf/envelope.hpp"
#include "envcf/frontal.hpp"

namespace envcf {

enum class IntersectKind : unsigned char { empty, tangent, pair, coincident };

struct CircleIntersection {
    IntersectKind kind = IntersectKind::empty;
    Vec2 p1, p2;  // tangent: p1 only
};

// Radical-line construction. Tangent when d matches r1+r2 or |r1-r2| within
// 1e-12 * (r1+r2+d); coincident circles are reported distinctly.
CircleIntersection circle_circle_intersect(Vec2 c1, double r1, Vec2 c2, double r2);

enum class SliceKind : unsigned char { empty, tangent, pair, full_circle };

const char* to_string(SliceKind kind);

struct DiscriminantSlice {
    double t = 0.0;
    SliceKind kind = SliceKind::empty;
    Vec2 p1, p2;          // tangent: p1 only
    Vec2 center;          // full_circle
    double radius = 0.0;  // full_circle

    int point_count() const {
        return kind == SliceKind::pair ? 2 : kind == SliceKind::tangent ? 1 : 0;
    }
};

// Solves F = dF/dt = 0 on the t-th circle through the frame reduction
// beta (u . mu) = -dlambda, writing points as gamma + lambda u with u unit.
// Valid at any t in I, grid sample or not. eps_beta <= 0 uses the frame's
// singularity cutoff.
DiscriminantSlice discriminant_slice(const Family& family, const FrontalData& frontal, double t,
                                     double eps_beta = -1.0);

struct UnmatchedPoint {
    double t;
    Vec2 p;
    double distance;  // to the nearest envelope point at the same t
};

struct DiscriminantSet {
    std::vector<DiscriminantSlice> slices;
    std::vector<double> full_circle_ts;
    std::vector<UnmatchedPoint> unmatched;  // must be empty for acceptance
    int matched_points = 0;

    bool decomposition_holds() const { return unmatched.empty(); }
};

// All grid slices with the decomposition check: every Pair/Tangent point is
// matched (within match_tol) to an envelope branch point at the same t and
// FullCircle slices are attributed to singular samples. Requires a creative
// family; throws Error(errc::not_creative) otherwise.
DiscriminantSet discriminant_set(const Family& family, const FrontalData& frontal,
                                 const CreativityReport& report,
                                 const std::vector<EnvelopeBranch>& branches,
                                 double match_tol = 1e-6);

// --- E1: limits of intersections of nearby circles ---------------------

struct E1Step {
    double eps = 0.0;
    IntersectKind kind = IntersectKind::empty;
    Vec2 point;
    double distance = 0.0;  // to the tracked envelope target f(t0)
};

struct E1Track {
    int direction = +1;              // sign of eps
    std::vector<E1Step> steps;       // |eps| descending
    Vec2 target;                     // nearest envelope point f(t0)
    double final_distance = 0.0;
    double fitted_order = 0.0;       // slope of log(dist) vs log|eps|; inf at roundoff floor
    bool at_floor = false;           // every distance below the roundoff floor
    Vec2 extrapolated;               // Richardson limit from the two smallest eps
    double extrapolated_distance = 0.0;
};

struct E1Result {
    double t0 = 0.0;
    std::vector<E1Track> tracks;
    bool coincident = false;         // concentric family: E1 degenerate
    std::vector<std::string> notes;
};

struct E1Options {
    std::vector<double> eps = {1e-2, 1e-3, 1e-4, 1e-5};
    bool negatives = true;
};

// Intersects C(t0) with C(t0+eps) over the eps sequence, tracking the two
// intersection points by the side of the line through the centers (nearest
// neighbour on ties), and fits the convergence order of the distance to the
// envelope point f(t0).
E1Result e1_limit(const Family& family, const FrontalData& frontal, double t0,
                  const E1Options& options = {});

}  // namespace envcf
