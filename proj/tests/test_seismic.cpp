#include <doctest.h>

#include <cmath>
#include <sstream>

#include "envcf/seismic.hpp"
#include "envcf/spline.hpp"
#include "oracles.hpp"

using namespace envcf;

TEST_CASE("spline: not-a-knot reproduces cubics exactly") {
    // Oracle: a cubic interpolated at arbitrary knots must come back exactly,
    // derivative included.
    auto cubic = [](double x) { return 1.0 + 2.0 * x - x * x + 0.5 * x * x * x; };
    auto dcubic = [](double x) { return 2.0 - 2.0 * x + 1.5 * x * x; };
    std::vector<double> xs = {-2.0, -1.3, -0.4, 0.1, 0.9, 1.4, 2.2, 3.0};
    std::vector<double> ys;
    for (double x : xs) ys.push_back(cubic(x));
    const CubicSpline s(xs, ys);
    for (double x = -2.0; x <= 3.0; x += 0.01) {
        CHECK(s.value(x) == doctest::Approx(cubic(x)).epsilon(1e-12));
        CHECK(s.derivative(x) == doctest::Approx(dcubic(x)).epsilon(1e-10));
    }
}

TEST_CASE("spline: rejects bad knots") {
    CHECK_THROWS_AS(CubicSpline({0.0}, {1.0}), Error);
    CHECK_THROWS_AS(CubicSpline({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}), Error);
    CHECK_THROWS_AS(CubicSpline({0.0, 1.0}, {1.0}), Error);
}

namespace {

SurveyData survey_from_text(const std::string& csv, Vec2 source = {0, 0}, double speed = 1.0,
                            ReflectorSide side = ReflectorSide::lower) {
    std::istringstream in(csv);
    return ingest_survey(in, source, speed, side);
}

}  // namespace

TEST_CASE("ingest: accepts well-formed rows") {
    const SurveyData d = survey_from_text(
        "t,sensor_x,sensor_y,arrival_s\n"
        "0,0,0,2\n"
        "1,1,0,2.1\n"
        "2,2,0,2.5\n");
    CHECK(d.rows() == 3);
    CHECK(d.sensor[1].x == 1.0);
    CHECK(d.arrival[2] == 2.5);
}

TEST_CASE("ingest: rejections name the offending line") {
    auto expect_error = [](const std::string& csv, const char* needle) {
        try {
            survey_from_text(csv);
            FAIL_CHECK("expected error for: ", needle);
        } catch (const Error& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                          "message was: ", e.what());
        }
    };
    expect_error("x,y\n", "header");
    expect_error("t,sensor_x,sensor_y,arrival_s\n0,0,0,-1\n", "line 2");
    expect_error("t,sensor_x,sensor_y,arrival_s\n0,0,0,1\n0,0,0,1\n", "line 3");     // duplicate t
    expect_error("t,sensor_x,sensor_y,arrival_s\n1,0,0,1\n0,0,0,1\n", "line 3");     // unsorted
    expect_error("t,sensor_x,sensor_y,arrival_s\n0,0,0\n", "line 2");                // field count
    expect_error("t,sensor_x,sensor_y,arrival_s\n0,zero,0,1\n", "line 2");           // bad number
    CHECK_THROWS_AS(survey_from_text("t,sensor_x,sensor_y,arrival_s\n0,0,0,1\n"), Error);
    CHECK_THROWS_AS(survey_from_text("t,sensor_x,sensor_y,arrival_s\n0,0,0,1\n1,0,0,2\n",
                                     {0, 0}, -1.0),
                    Error);  // speed must be positive
}

TEST_CASE("radii: lambda = c * tau through the records") {
    const SurveyData d = survey_from_text(
        "t,sensor_x,sensor_y,arrival_s\n"
        "0,0,0,2\n"
        "1,1,0,2.1\n"
        "2,2,0,2.5\n"
        "3,3,0,3.1\n",
        {0, 0}, 1500.0);
    const SurveyFamily fam(d, 64);
    // Interpolation passes through the records exactly.
    CHECK(fam.lambda(0.0) == doctest::Approx(3000.0).epsilon(1e-12));
    CHECK(fam.lambda(1.0) == doctest::Approx(3150.0).epsilon(1e-12));
    CHECK(fam.lambda(3.0) == doctest::Approx(4650.0).epsilon(1e-12));
    // Between monotone records the value stays between the neighbours.
    const double mid = fam.lambda(1.5);
    CHECK(mid > 3150.0);
    CHECK(mid < 3750.0);
}

TEST_CASE("flat reflector: times match the closed-form path length") {
    const auto reflector = oracles::flat_reflector(-1.0);
    const std::string csv =
        oracles::synthetic_survey_csv(reflector, {0, 0}, 1.0, -1.0, 1.0, 41);
    const SurveyData d = survey_from_text(csv);
    const SurveyFamily fam(d, 501);
    // lambda(t) = sqrt(t^2 + 4): reflection across y = -1 straightens the ray.
    for (double t : {-0.9, -0.4, 0.05, 0.33, 0.88}) {
        CHECK(fam.lambda(t) == doctest::Approx(std::sqrt(t * t + 4.0)).epsilon(1e-8));
        CHECK(fam.dlambda(t) ==
              doctest::Approx(t / std::sqrt(t * t + 4.0)).epsilon(1e-5));
    }
}

TEST_CASE("flat reflector: recover_orthotomic finds W = (0,-2)") {
    const auto reflector = oracles::flat_reflector(-1.0);
    const std::string csv =
        oracles::synthetic_survey_csv(reflector, {0, 0}, 1.0, -1.0, 1.0, 101);
    const SurveyData d = survey_from_text(csv);
    const SeismicResult r = recover_orthotomic(d, 1001);
    CHECK(r.report.classification == FamilyClass::exactly_two);
    REQUIRE(r.selected >= 0);
    const EnvelopeBranch& w = r.orthotomic();
    for (int k = 0; k < w.size(); ++k) {
        CHECK(std::abs(w.point[k].x - 0.0) <= 1e-6);
        CHECK(std::abs(w.point[k].y + 2.0) <= 1e-6);
    }
    // The other branch is the mirror image above the sensors.
    const EnvelopeBranch& other = r.branches[1 - r.selected];
    CHECK(std::abs(other.point[w.size() / 2].y - 2.0) <= 1e-6);
    // lambda = ||f - gamma|| on its circle.
    for (int k = 0; k < w.size(); ++k)
        CHECK(std::abs((w.point[k] - r.frontal.gamma[k]).norm() - r.frontal.lambda[k]) <= 1e-9);
}

TEST_CASE("side policy: upper picks the mirror branch") {
    const auto reflector = oracles::flat_reflector(-1.0);
    const std::string csv =
        oracles::synthetic_survey_csv(reflector, {0, 0}, 1.0, -1.0, 1.0, 41);
    const SurveyData d = survey_from_text(csv, {0, 0}, 1.0, ReflectorSide::upper);
    const SeismicResult r = recover_orthotomic(d, 301);
    CHECK(r.orthotomic().point[150].y == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("reconstruct_reflector: worked mirror-geometry example") {
    // A = (0,0), f = (0,-2), gamma = (3,0): m = (1.5,-1).
    FrontalData fr;
    fr.grid = SampleGrid{Interval{0.0, 1.0}, 1};
    fr.t = {0.5};
    fr.gamma = {{3.0, 0.0}};
    EnvelopeBranch w;
    w.t = fr.t;
    w.point = {{0.0, -2.0}};
    const auto m = reconstruct_reflector(w, {0.0, 0.0}, fr);
    REQUIRE(m.size() == 1);
    CHECK(m[0].m.x == doctest::Approx(1.5));
    CHECK(m[0].m.y == doctest::Approx(-1.0));
    CHECK_FALSE(m[0].flagged);
    // Mirror identities: |A-m| = |f-m| and f, m, gamma collinear.
    const Vec2 A{0, 0};
    CHECK((A - m[0].m).norm() == doctest::Approx((w.point[0] - m[0].m).norm()).epsilon(1e-12));
    CHECK(std::abs((m[0].m - w.point[0]).cross(fr.gamma[0] - w.point[0])) <= 1e-12);
}

TEST_CASE("reconstruct_reflector: flat synthetic lands on y = -1") {
    const auto reflector = oracles::flat_reflector(-1.0);
    const std::string csv =
        oracles::synthetic_survey_csv(reflector, {0, 0}, 1.0, -1.0, 1.0, 101);
    const SeismicResult r = recover_orthotomic(survey_from_text(csv), 1001);
    REQUIRE_FALSE(r.reflector.empty());
    for (const ReflectorPoint& p : r.reflector) {
        CHECK(std::abs(p.m.y + 1.0) <= 1e-6);
        CHECK(std::abs(p.m.x - p.t / 2.0) <= 1e-6);
        CHECK_FALSE(p.flagged);
        // Mirror identities against the recovered W.
    }
    for (int k = 0; k < r.orthotomic().size(); ++k) {
        const Vec2 m = r.reflector[k].m;
        const Vec2 f = r.orthotomic().point[k];
        const Vec2 g = r.frontal.gamma[k];
        const double scale = 1.0 + f.norm() + g.norm();
        CHECK(std::abs((Vec2{0, 0} - m).norm() - (f - m).norm()) <= 1e-9 * scale);
        CHECK(std::abs((m - f).cross(g - f)) <= 1e-9 * scale * scale);
    }
}

TEST_CASE("reconstruct_reflector: envelope through the source is degenerate") {
    FrontalData fr;
    fr.grid = SampleGrid{Interval{0.0, 1.0}, 1};
    fr.t = {0.5};
    fr.gamma = {{3.0, 0.0}};
    EnvelopeBranch w;
    w.t = fr.t;
    w.point = {{0.0, 0.0}};  // f == A
    CHECK_THROWS_AS(reconstruct_reflector(w, {0.0, 0.0}, fr), Error);
}

TEST_CASE("concentric sensors are surfaced, not cannonballed through the frame") {
    // All sensors at one point, constant arrivals: uncountably many envelopes.
    CHECK_THROWS_WITH_AS(
        recover_orthotomic(survey_from_text("t,sensor_x,sensor_y,arrival_s\n"
                                            "0,5,5,1\n1,5,5,1\n2,5,5,1\n3,5,5,1\n"),
                           101),
        doctest::Contains("uncountably many"), Error);
    // Changing radii: not creative at all.
    CHECK_THROWS_AS(
        recover_orthotomic(survey_from_text("t,sensor_x,sensor_y,arrival_s\n"
                                            "0,5,5,1\n1,5,5,2\n2,5,5,3\n3,5,5,4\n"),
                           101),
        Error);
}

TEST_CASE("noisy times stay within the advertised tolerance") {
    const auto reflector = oracles::flat_reflector(-1.0);
    const std::string noisy =
        oracles::synthetic_survey_csv(reflector, {0, 0}, 1.0, -1.0, 1.0, 101, 1e-6, 17);
    const SeismicResult r = recover_orthotomic(survey_from_text(noisy), 1001);
    for (int k = 0; k < r.orthotomic().size(); ++k)
        CHECK(distance(r.orthotomic().point[k], Vec2{0.0, -2.0}) <= 2e-3);
}

TEST_CASE("inconsistent times refuse with margin diagnostics") {
    // Arrivals growing much faster than the sensors move: |dlambda| > |beta|.
    CHECK_THROWS_WITH_AS(
        recover_orthotomic(survey_from_text("t,sensor_x,sensor_y,arrival_s\n"
                                            "0,0,0,1\n1,1,0,4\n2,2,0,7\n3,3,0,10\n"),
                           101),
        doctest::Contains("creative"), Error);
}
