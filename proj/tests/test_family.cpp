#include <doctest.h>

#include <cmath>

#include "envcf/family.hpp"
#include "envcf/gallery.hpp"

using namespace envcf;

TEST_CASE("scenario: gallery example9 loads and validates") {
    const GalleryEntry* entry = gallery_entry("example9");
    REQUIRE(entry != nullptr);
    const Scenario sc = parse_scenario(entry->scenario_text);
    CHECK(sc.name == "example9");
    CHECK(sc.family.interval.a == -2.0);
    CHECK(sc.family.interval.b == 2.0);
    CHECK(sc.family.has_gauss());
    const auto family = build_family(sc);
    CHECK(family->samples() == 2001);
    CHECK(family->gamma(1.0).x == doctest::Approx(1.0));
    CHECK(family->gamma(1.0).y == doctest::Approx(1.0));
}

TEST_CASE("scenario: comments, key errors") {
    const char* good =
        "# a comment\n"
        "gamma.x = t   # trailing comment\n"
        "gamma.y = 0\n"
        "lambda = 1\n"
        "interval = -1 1\n"
        "samples = 11\n";
    const Scenario sc = parse_scenario(good);
    CHECK(sc.family.samples == 11);
    CHECK_FALSE(sc.family.has_gauss());

    CHECK_THROWS_AS(parse_scenario("gamma.x = t\nlambda = 1\ninterval = 0 1\n"),
                    Error);  // missing gamma.y
    CHECK_THROWS_AS(parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = 0 1\n"
                                   "mystery = 3\n"),
                    Error);  // unknown key
    CHECK_THROWS_AS(parse_scenario("gamma.x = t\ngamma.x = t\ngamma.y = 0\nlambda = 1\n"
                                   "interval = 0 1\n"),
                    Error);  // duplicate key
    CHECK_THROWS_AS(parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = 1 0\n"),
                    Error);  // a >= b
    CHECK_THROWS_AS(parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = 0 1\n"
                                   "samples = 1\n"),
                    Error);  // samples < 2
    CHECK_THROWS_AS(parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = 0 1\n"
                                   "nu.x = 0\n"),
                    Error);  // nu.x without nu.y
    CHECK_THROWS_AS(parse_scenario("gamma.x = t +\ngamma.y = 0\nlambda = 1\ninterval = 0 1\n"),
                    Error);  // expression error surfaced with key name
    try {
        parse_scenario("gamma.x = t +\ngamma.y = 0\nlambda = 1\ninterval = 0 1\n");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("gamma.x") != std::string::npos);
    }
}

TEST_CASE("build_family: lambda must be positive on the grid") {
    // lambda = t is negative on half of (-1, 1).
    Scenario sc = parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = t\ninterval = -1 1\n");
    CHECK_THROWS_AS(build_family(sc), Error);
    try {
        build_family(sc);
    } catch (const Error& e) {
        CHECK(e.code() == errc::validate);
        CHECK(std::string(e.what()).find("lambda") != std::string::npos);
    }
    // On (0, 1) the open-interval midpoint grid never evaluates t = 0.
    Scenario ok = parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = t\ninterval = 0 1\n");
    CHECK_NOTHROW(build_family(ok));
}

TEST_CASE("build_family: supplied nu must be unit and orthogonal") {
    // nu = (1,0) against gamma = (t,0): gamma'.nu = 1.
    CHECK_THROWS_AS(build_family(parse_scenario(
                        "gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = -1 1\n"
                        "nu.x = 1\nnu.y = 0\n")),
                    Error);
    // nu = (2,0): not unit.
    CHECK_THROWS_AS(build_family(parse_scenario(
                        "gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = -1 1\n"
                        "nu.x = 2\nnu.y = 0\n")),
                    Error);
    CHECK_NOTHROW(build_family(parse_scenario(
        "gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = -1 1\nnu.x = 0\nnu.y = -1\n")));
}

TEST_CASE("build_family: domain errors on the grid are validation errors") {
    CHECK_THROWS_AS(
        build_family(parse_scenario(
            "gamma.x = sqrt(t)\ngamma.y = 0\nlambda = 1\ninterval = -1 1\n")),
        Error);
}

TEST_CASE("grid: open-interval midpoints") {
    const Scenario sc =
        parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = 0 1\nsamples = 4\n");
    const auto family = build_family(sc);
    const SampleGrid& grid = family->grid();
    CHECK(grid.t(0) == doctest::Approx(0.125));
    CHECK(grid.t(3) == doctest::Approx(0.875));
    // Endpoints excluded.
    CHECK(grid.t(0) > 0.0);
    CHECK(grid.t(3) < 1.0);
}

TEST_CASE("samples override replaces the scenario grid size") {
    const Scenario sc =
        parse_scenario("gamma.x = t\ngamma.y = 0\nlambda = 1\ninterval = 0 1\nsamples = 10\n");
    CHECK(build_family(sc)->samples() == 10);
    CHECK(build_family(sc, 501)->samples() == 501);
}
