#include <doctest.h>

#include <cmath>
#include <random>

#include "envcf/discriminant.hpp"
#include "envcf/gallery.hpp"
#include "oracles.hpp"

using namespace envcf;

namespace {

struct Built {
    std::shared_ptr<const SymbolicFamily> family;
    FrontalData frontal;
    CreativityReport report;
    std::vector<EnvelopeBranch> branches;
};

Built run_entry(const char* id, int samples = 0) {
    Built b;
    b.family = build_family(parse_scenario(gallery_entry(id)->scenario_text), samples);
    b.frontal = build_frontal(*b.family);
    b.report = classify_family(b.frontal);
    if (b.report.creative()) {
        b.branches = creator_branches(b.report, b.frontal);
        for (EnvelopeBranch& br : b.branches) build_envelope(br, b.frontal);
    }
    return b;
}

double F_of(const Family& fam, Vec2 p, double t) {
    return (p - fam.gamma(t)).norm2() - fam.lambda(t) * fam.lambda(t);
}

double dFdt_of(const Family& fam, Vec2 p, double t) {
    return -2.0 * fam.dgamma(t).dot(p - fam.gamma(t)) -
           2.0 * fam.lambda(t) * fam.dlambda(t);
}

}  // namespace

TEST_CASE("circle_circle_intersect: textbook cases") {
    // Two unit circles one apart.
    {
        const auto r = circle_circle_intersect({0, 0}, 1.0, {1, 0}, 1.0);
        REQUIRE(r.kind == IntersectKind::pair);
        const double y = std::sqrt(3.0) / 2.0;
        CHECK(std::min(r.p1.y, r.p2.y) == doctest::Approx(-y).epsilon(1e-12));
        CHECK(std::max(r.p1.y, r.p2.y) == doctest::Approx(y).epsilon(1e-12));
        CHECK(r.p1.x == doctest::Approx(0.5));
        CHECK(std::max(r.p1.y, r.p2.y) == doctest::Approx(0.8660254).epsilon(1e-7));
    }
    // Disjoint.
    CHECK(circle_circle_intersect({0, 0}, 1.0, {3, 0}, 1.0).kind == IntersectKind::empty);
    // External tangency.
    {
        const auto r = circle_circle_intersect({0, 0}, 1.0, {2, 0}, 1.0);
        REQUIRE(r.kind == IntersectKind::tangent);
        CHECK(r.p1.x == doctest::Approx(1.0));
        CHECK(r.p1.y == doctest::Approx(0.0));
    }
    // Internal tangency.
    {
        const auto r = circle_circle_intersect({0, 0}, 2.0, {1, 0}, 1.0);
        REQUIRE(r.kind == IntersectKind::tangent);
        CHECK(r.p1.x == doctest::Approx(2.0));
    }
    // Nested without touching.
    CHECK(circle_circle_intersect({0, 0}, 2.0, {0.1, 0}, 1.0).kind == IntersectKind::empty);
    // Coincident is reported distinctly.
    CHECK(circle_circle_intersect({0, 0}, 1.0, {0, 0}, 1.0).kind == IntersectKind::coincident);
    CHECK(circle_circle_intersect({0, 0}, 1.0, {0, 0}, 1.5).kind == IntersectKind::empty);
    CHECK_THROWS_AS(circle_circle_intersect({0, 0}, 0.0, {1, 0}, 1.0), Error);
}

TEST_CASE("slice: singular parameter of (t^3,t^6) yields the full unit circle") {
    const Built b = run_entry("example3");
    const DiscriminantSlice s = discriminant_slice(*b.family, b.frontal, 0.0);
    REQUIRE(s.kind == SliceKind::full_circle);
    CHECK(s.center.x == doctest::Approx(0.0));
    CHECK(s.center.y == doctest::Approx(0.0));
    CHECK(s.radius == doctest::Approx(1.0));
    // Oracle agrees.
    const auto oracle = oracles::brute_force_slice(*b.family, 0.0, 200000);
    CHECK(oracle.kind == SliceKind::full_circle);
}

TEST_CASE("slice: translated unit circles at t = 0 give the pair (0,+-1)") {
    const Built b = run_entry("example5");
    const DiscriminantSlice s = discriminant_slice(*b.family, b.frontal, 0.0);
    REQUIRE(s.kind == SliceKind::pair);
    CHECK(std::abs(s.p1.x) <= 1e-12);
    CHECK(std::abs(s.p2.x) <= 1e-12);
    CHECK(std::max(s.p1.y, s.p2.y) == doctest::Approx(1.0));
    CHECK(std::min(s.p1.y, s.p2.y) == doctest::Approx(-1.0));
    const auto oracle = oracles::brute_force_slice(*b.family, 0.0, 200000);
    REQUIRE(oracle.kind == SliceKind::pair);
    for (const Vec2& p : oracle.points) {
        const double d = std::min(distance(p, s.p1), distance(p, s.p2));
        CHECK(d <= 1e-5);
    }
}

TEST_CASE("slice: shrinking circles at t = 0.6 have an empty slice") {
    const Built b = run_entry("example7");
    const DiscriminantSlice s = discriminant_slice(*b.family, b.frontal, 0.6);
    CHECK(s.kind == SliceKind::empty);
    CHECK(oracles::brute_force_slice(*b.family, 0.6, 200000).kind == SliceKind::empty);
}

TEST_CASE("slice points satisfy F = dF/dt = 0") {
    std::mt19937_64 rng(4242);
    for (const char* id : {"example3", "example5", "example8", "example9"}) {
        const Built b = run_entry(id);
        const Interval I = b.family->interval();
        std::uniform_real_distribution<double> draw(I.a + 0.05 * I.width(),
                                                    I.b - 0.05 * I.width());
        for (int i = 0; i < 25; ++i) {
            const double t = draw(rng);
            const DiscriminantSlice s = discriminant_slice(*b.family, b.frontal, t);
            const double scale =
                1.0 + b.family->dgamma(t).norm() + b.family->lambda(t) * b.family->lambda(t);
            for (int p = 0; p < s.point_count(); ++p) {
                const Vec2 pt = p == 0 ? s.p1 : s.p2;
                CHECK(std::abs(F_of(*b.family, pt, t)) <= 1e-9 * scale);
                CHECK(std::abs(dFdt_of(*b.family, pt, t)) <= 1e-9 * scale);
            }
        }
    }
}

TEST_CASE("slice agrees with the brute-force circle scan on random draws") {
    std::mt19937_64 rng(90210);
    const auto& entries = gallery_entries();
    std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
    for (int i = 0; i < 12; ++i) {
        const GalleryEntry& entry = entries[pick(rng)];
        const auto family = build_family(parse_scenario(entry.scenario_text), 301);
        const FrontalData fr = build_frontal(*family);
        const Interval I = family->interval();
        std::uniform_real_distribution<double> draw(I.a + 0.02 * I.width(),
                                                    I.b - 0.02 * I.width());
        const double t = draw(rng);
        const DiscriminantSlice s = discriminant_slice(*family, fr, t);
        const auto oracle = oracles::brute_force_slice(*family, t, 1000000);
        REQUIRE_MESSAGE(oracle.kind == s.kind, entry.id, " at t = ", t);
        std::vector<Vec2> mine;
        if (s.point_count() >= 1) mine.push_back(s.p1);
        if (s.point_count() == 2) mine.push_back(s.p2);
        for (const Vec2& p : oracle.points) {
            double best = 1e9;
            for (const Vec2& q : mine) best = std::min(best, distance(p, q));
            CHECK(best <= 1e-5);
        }
    }
}

TEST_CASE("decomposition: cusp family splits into two branches plus the unit circle") {
    const Built b = run_entry("example3", 2001);
    const DiscriminantSet ds = discriminant_set(*b.family, b.frontal, b.report, b.branches);
    CHECK(ds.decomposition_holds());
    REQUIRE(ds.full_circle_ts.size() == 1);
    CHECK(std::abs(ds.full_circle_ts[0]) <= 1e-9);
    CHECK(ds.matched_points > 0);
}

TEST_CASE("decomposition: regular family has no full circles") {
    const Built b = run_entry("example5", 1001);
    const DiscriminantSet ds = discriminant_set(*b.family, b.frontal, b.report, b.branches);
    CHECK(ds.decomposition_holds());
    CHECK(ds.full_circle_ts.empty());
    // D contains E2: every slice point matched, two per slice here.
    CHECK(ds.matched_points == 2 * b.frontal.size());
}

TEST_CASE("decomposition: unique-envelope family is all tangent slices at the origin") {
    const Built b = run_entry("example4", 1001);
    const DiscriminantSet ds = discriminant_set(*b.family, b.frontal, b.report, b.branches);
    CHECK(ds.decomposition_holds());
    for (const DiscriminantSlice& s : ds.slices) {
        CHECK(s.kind == SliceKind::tangent);
        CHECK(distance(s.p1, Vec2{0, 0}) <= 1e-9);
    }
}

TEST_CASE("D contains E2: every envelope sample point appears in its slice") {
    for (const char* id : {"example3", "example4", "example5", "example8", "example9"}) {
        const Built b = run_entry(id, 801);
        for (int k = 0; k < b.frontal.size(); ++k) {
            const DiscriminantSlice s = discriminant_slice(*b.family, b.frontal, b.frontal.t[k]);
            for (const EnvelopeBranch& br : b.branches) {
                const Vec2 f = br.point[k];
                double best = 1e30;
                if (s.kind == SliceKind::full_circle)
                    best = std::abs(distance(f, s.center) - s.radius);
                if (s.point_count() >= 1) best = std::min(best, distance(f, s.p1));
                if (s.point_count() == 2) best = std::min(best, distance(f, s.p2));
                CHECK_MESSAGE(best <= 1e-6, id, " at t = ", b.frontal.t[k]);
            }
        }
    }
}

TEST_CASE("decomposition refuses a NotCreative family") {
    const Built b = run_entry("example7", 501);
    CHECK_THROWS_AS(discriminant_set(*b.family, b.frontal, b.report, {}), Error);
}

TEST_CASE("e1: translated unit circles converge to (0,+-1) at first order") {
    const Built b = run_entry("example5", 1001);
    // Closed form at eps = 1e-3: intersections (eps/2, +-sqrt(1-eps^2/4)).
    const auto isect = circle_circle_intersect(b.family->gamma(0.0), 1.0,
                                               b.family->gamma(1e-3), 1.0);
    REQUIRE(isect.kind == IntersectKind::pair);
    CHECK(isect.p1.x == doctest::Approx(5e-4).epsilon(1e-12));
    CHECK(std::abs(isect.p1.y) == doctest::Approx(std::sqrt(1.0 - 2.5e-7)).epsilon(1e-12));
    CHECK(std::abs(isect.p1.y) == doctest::Approx(0.9999999).epsilon(1e-7));

    const E1Result r = e1_limit(*b.family, b.frontal, 0.0);
    REQUIRE(r.tracks.size() == 4);  // two sides, two eps signs
    for (const E1Track& track : r.tracks) {
        CHECK(std::abs(std::abs(track.target.y) - 1.0) <= 1e-12);
        CHECK(track.final_distance <= 1e-4 * (1.0 + track.target.norm()));
        if (!track.at_floor) CHECK(track.fitted_order >= 0.9);
        CHECK(track.extrapolated_distance <= 1e-8);
    }
}

TEST_CASE("e1: cusp family limits land on the closed-form envelope at t0 = 1") {
    const Built b = run_entry("example9", 1001);
    const E1Result r = e1_limit(*b.family, b.frontal, 1.0);
    REQUIRE_FALSE(r.tracks.empty());
    const double w = std::sqrt(13.0);
    const Vec2 fp{1.0 + 2.0 / w, 1.0 - 3.0 / w};
    const Vec2 fm{1.0 - 2.0 / w, 1.0 + 3.0 / w};
    for (const E1Track& track : r.tracks) {
        const double to_target = std::min(distance(track.extrapolated, fp),
                                          distance(track.extrapolated, fm));
        CHECK(to_target <= 1e-6);
        if (!track.at_floor) CHECK(track.fitted_order >= 0.9);
    }
}

TEST_CASE("e1: concentric circles are degenerate") {
    const Built b = run_entry("example6", 301);
    const E1Result r = e1_limit(*b.family, b.frontal, 3.0);
    CHECK(r.coincident);
    CHECK(r.tracks.empty());
}

TEST_CASE("e1: unique-envelope family hits the envelope point exactly") {
    const Built b = run_entry("example4", 301);
    const E1Result r = e1_limit(*b.family, b.frontal, 1.0);
    REQUIRE_FALSE(r.tracks.empty());
    for (const E1Track& track : r.tracks) {
        CHECK(track.final_distance <= 1e-9);
        CHECK(distance(track.target, Vec2{0, 0}) <= 1e-9);
    }
}
