#include <doctest.h>

#include <cmath>

#include "envcf/frontal.hpp"
#include "envcf/gallery.hpp"

using namespace envcf;

namespace {

std::shared_ptr<const SymbolicFamily> family_from(const char* text, int samples = 0) {
    return build_family(parse_scenario(text), samples);
}

}  // namespace

TEST_CASE("auto frame: straight line gets nu = (0,-1)") {
    const auto fam = family_from("gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = -2 2\n", 401);
    const FrontalData fr = build_frontal(*fam);
    for (int k = 0; k < fr.size(); ++k) {
        CHECK(fr.nu[k].x == doctest::Approx(0.0));
        CHECK(fr.nu[k].y == doctest::Approx(-1.0));
        CHECK(fr.mu[k].x == doctest::Approx(1.0));
        CHECK(fr.mu[k].y == doctest::Approx(0.0));
        CHECK(fr.beta[k] == doctest::Approx(1.0));
        CHECK(fr.ell[k] == doctest::Approx(0.0));
    }
    CHECK(fr.first_regular == 0);
}

TEST_CASE("auto frame: cusp curve keeps one closed form across t = 0") {
    // gamma = (t^3, t^2): the tracked frame must equal s*(2,-3t)/sqrt(4+9t^2)
    // for a single global sign s, with no flip at the cusp.
    const auto fam =
        family_from("gamma.x = t^3\ngamma.y = t^2\nlambda = 1\ninterval = -2 2\n", 2001);
    const FrontalData fr = build_frontal(*fam);
    auto closed_nu = [](double t) {
        const double w = std::sqrt(4.0 + 9.0 * t * t);
        return Vec2{2.0 / w, -3.0 * t / w};
    };
    const double sign = fr.nu[0].dot(closed_nu(fr.t[0])) > 0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (int k = 0; k < fr.size(); ++k)
        worst = std::max(worst, distance(fr.nu[k], sign * closed_nu(fr.t[k])));
    CHECK(worst <= 1e-9);
    // Sign coherence: beta >= 0 at the first regular sample.
    CHECK(fr.beta[fr.first_regular] >= 0.0);
    // The cusp sample itself is flagged singular.
    bool any_singular = false;
    for (int k = 0; k < fr.size(); ++k)
        if (fr.singular[k]) {
            any_singular = true;
            CHECK(std::abs(fr.t[k]) < 1e-2);
        }
    CHECK(any_singular);
}

TEST_CASE("auto frame: vertical line picks a consistent horizontal normal") {
    const auto fam =
        family_from("gamma.x = 0\ngamma.y = 1 + t\nlambda = 1\ninterval = 0 2\n", 101);
    const FrontalData fr = build_frontal(*fam);
    const double sx = fr.nu[0].x;
    CHECK(std::abs(sx) == doctest::Approx(1.0));
    for (int k = 0; k < fr.size(); ++k) {
        CHECK(fr.nu[k].x == doctest::Approx(sx));
        CHECK(fr.nu[k].y == doctest::Approx(0.0));
    }
}

TEST_CASE("moving frame: mu = J(nu) exactly") {
    CHECK(rotate90(Vec2{0, -1}).x == 1.0);
    CHECK(rotate90(Vec2{0, -1}).y == 0.0);
    CHECK(rotate90(Vec2{1, 0}).x == 0.0);
    CHECK(rotate90(Vec2{1, 0}).y == 1.0);
    // example9 frame at t = 1: mu = (3,2)/sqrt(13).
    const auto fam = build_family(parse_scenario(gallery_entry("example9")->scenario_text));
    const FrontalData fr = build_frontal(*fam);
    int k1 = 0;
    for (int k = 0; k < fr.size(); ++k)
        if (std::abs(fr.t[k] - 1.0) < std::abs(fr.t[k1] - 1.0)) k1 = k;
    const Vec2 mu = rotate90(fam->gauss(1.0));
    CHECK(mu.x == doctest::Approx(0.8320503).epsilon(1e-6));
    CHECK(mu.y == doctest::Approx(0.5547002).epsilon(1e-6));
    (void)k1;
}

TEST_CASE("curvature pair values from the worked examples") {
    // gamma = (t^3, t^2), closed-form frame: beta(t) = t sqrt(4+9t^2).
    {
        const auto fam = build_family(parse_scenario(gallery_entry("example9")->scenario_text));
        const FrontalData fr = build_frontal(*fam);
        const double beta1 = fam->dgamma(1.0).dot(rotate90(fam->gauss(1.0)));
        CHECK(beta1 == doctest::Approx(std::sqrt(13.0)).epsilon(1e-12));
        CHECK(beta1 == doctest::Approx(3.6055513).epsilon(1e-7));
        (void)fr;
    }
    // gamma = (t^3, t^6), closed-form frame: beta(t) = -3t^2(1+4t^6)/sqrt(4t^6+1).
    {
        const auto fam = build_family(parse_scenario(gallery_entry("example3")->scenario_text));
        const double beta1 = fam->dgamma(1.0).dot(rotate90(fam->gauss(1.0)));
        CHECK(beta1 == doctest::Approx(-15.0 / std::sqrt(5.0)).epsilon(1e-12));
        CHECK(beta1 == doctest::Approx(-6.7082039).epsilon(1e-7));
    }
}

TEST_CASE("frontal invariants over the gallery") {
    for (const GalleryEntry& entry : gallery_entries()) {
        const auto fam = build_family(parse_scenario(entry.scenario_text), 801);
        const FrontalData fr = build_frontal(*fam);
        for (int k = 0; k < fr.size(); ++k) {
            CHECK(std::abs(fr.nu[k].norm() - 1.0) <= 1e-9);
            CHECK(std::abs(fr.mu[k].norm() - 1.0) <= 1e-9);
            // mu = J(nu) exactly.
            CHECK(fr.mu[k].x == -fr.nu[k].y);
            CHECK(fr.mu[k].y == fr.nu[k].x);
            // Orthogonality and |beta| = ||gamma'||.
            const double speed = fr.dgamma[k].norm();
            CHECK(std::abs(fr.dgamma[k].dot(fr.nu[k])) <= 1e-8 * (1.0 + speed));
            CHECK(std::abs(std::abs(fr.beta[k]) - speed) <= 1e-9 * (1.0 + speed));
        }
    }
}

TEST_CASE("ell: symbolic derivative matches finite differences away from singular samples") {
    const auto fam = build_family(parse_scenario(gallery_entry("example9")->scenario_text), 2001);
    const FrontalData fr = build_frontal(*fam);
    REQUIRE(fr.gauss_symbolic);
    const double h = fr.grid.spacing();
    for (int k = 1; k + 1 < fr.size(); ++k) {
        if (fr.singular[k] || fr.singular[k - 1] || fr.singular[k + 1]) continue;
        const Vec2 dnu_fd = (fr.nu[k + 1] - fr.nu[k - 1]) / (2.0 * h);
        const double ell_fd = dnu_fd.dot(fr.mu[k]);
        CHECK(std::abs(fr.ell[k] - ell_fd) <= 1e-5);
    }
}

TEST_CASE("constant gamma: refuses without nu, works with any supplied nu") {
    CHECK_THROWS_AS(
        build_frontal(*family_from("gamma.x = 0\ngamma.y = 0\nlambda = 1\ninterval = 0 1\n", 64)),
        Error);
    try {
        build_frontal(*family_from("gamma.x = 0\ngamma.y = 0\nlambda = 1\ninterval = 0 1\n", 64));
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("supply nu") != std::string::npos);
    }
    const auto fam = family_from(
        "gamma.x = 0\ngamma.y = 0\nlambda = 1\ninterval = 0 1\nnu.x = cos(t)\nnu.y = sin(t)\n",
        64);
    const FrontalData fr = build_frontal(*fam);
    for (int k = 0; k < fr.size(); ++k) {
        CHECK(fr.singular[k] == 1);
        CHECK(fr.beta[k] == doctest::Approx(0.0));
    }
}

TEST_CASE("tracking warns when the frame turns faster than the grid resolves") {
    // Tight spiral sampled coarsely: consecutive normals are far apart.
    const auto fam = family_from(
        "gamma.x = cos(40*t)\ngamma.y = sin(40*t)\nlambda = 1\ninterval = 0 6\n", 64);
    const FrontalData fr = build_frontal(*fam);
    CHECK_FALSE(fr.warnings.empty());
}
