#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "oneside/fundamental.hpp"
#include "oneside/grid.hpp"

using namespace oneside;

TEST_CASE("make_uniform_grid nodes and spacing") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 4);
    REQUIRE(g.num_nodes() == 5);
    CHECK(g.node(0) == doctest::Approx(0.0));
    CHECK(g.node(1) == doctest::Approx(0.25));
    CHECK(g.node(2) == doctest::Approx(0.5));
    CHECK(g.node(3) == doctest::Approx(0.75));
    CHECK(g.node(4) == doctest::Approx(1.0));

    CHECK(make_uniform_grid(-5.0, 5.0, 10).dx() == doctest::Approx(1.0));
}

TEST_CASE("make_uniform_grid rejects bad input") {
    CHECK_THROWS(make_uniform_grid(0.0, 0.0, 4));   // degenerate interval
    CHECK_THROWS(make_uniform_grid(1.0, 0.0, 4));   // reversed
    CHECK_THROWS(make_uniform_grid(0.0, 1.0, 1));   // n < 2
    CHECK_THROWS(make_uniform_grid(0.0, 1.0 / 0.0, 4));
}

TEST_CASE("mass_of trapezoid integral") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 10);
    auto one = sample(g, [](double) { return 1.0; });
    CHECK(mass_of(one) == doctest::Approx(1.0));

    // hat of height 2, base width 1: triangle area 1
    Grid1D gh = make_uniform_grid(-1.0, 1.0, 400);
    auto hat = sample(gh, [](double x) {
        double q = 1.0 - std::abs(x) / 0.5;
        return q > 0.0 ? 2.0 * q : 0.0;
    });
    CHECK(mass_of(hat) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("mass_of Barenblatt sample matches its mass") {
    Grid1D g = make_uniform_grid(-10.0, 10.0, 4000);
    auto rho = barenblatt(2.0, Mass(1.0), 1.0, g);
    CHECK(mass_of(rho) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("total_variation") {
    Grid1D g = make_uniform_grid(0.0, 1.0, 100);
    auto ramp = sample(g, [](double x) { return x; });
    CHECK(total_variation(ramp) == doctest::Approx(1.0));

    auto step = sample(g, [](double x) {
        return (x > 0.3 && x < 0.7) ? 1.0 : 0.0;
    });
    CHECK(total_variation(step) == doctest::Approx(2.0));

    // Burgers N-wave m=2, t=1: ramp to height 2, drop to 0 -> TV = 4;
    // sampling loses up to one ramp cell on each side of the crest
    Grid1D gn = make_uniform_grid(-1.0, 3.0, 800);
    auto nw = nwave(burgers_flux(), Mass(2.0), 1.0, gn);
    CHECK(std::abs(total_variation(nw) - 4.0) <= 2.0 * gn.dx() + 1e-12);
}

TEST_CASE("total_variation invariances") {
    Grid1D g = make_uniform_grid(-2.0, 2.0, 200);
    auto u = sample(g, [](double x) { return std::sin(3.0 * x) + 0.2 * x; });
    auto flipped = u;
    for (double& v : flipped.values) v = -v;
    auto shifted = u;
    for (double& v : shifted.values) v += 7.5;
    CHECK(total_variation(flipped) == doctest::Approx(total_variation(u)));
    CHECK(total_variation(shifted) == doctest::Approx(total_variation(u)));
}

TEST_CASE("support_of") {
    Grid1D g = make_uniform_grid(-2.0, 2.0, 400);
    auto zero = sample(g, [](double) { return 0.0; });
    CHECK(!support_of(zero, 0.0).has_value());

    auto hat = sample(g, [](double x) {
        double q = 1.0 - std::abs(x);
        return q > 0.0 ? q : 0.0;
    });
    auto s = support_of(hat, 0.0);
    REQUIRE(s.has_value());
    CHECK(std::abs(s->first - (-1.0)) <= g.dx() + 1e-12);
    CHECK(std::abs(s->second - 1.0) <= g.dx() + 1e-12);

    // support shrinks (set inclusion) as floor increases
    auto s2 = support_of(hat, 0.5);
    REQUIRE(s2.has_value());
    CHECK(s2->first >= s->first - 1e-12);
    CHECK(s2->second <= s->second + 1e-12);

    Grid1D gn = make_uniform_grid(-1.0, 3.0, 800);
    auto nw = nwave(burgers_flux(), Mass(2.0), 1.0, gn);
    auto sn = support_of(nw, 1e-8);
    REQUIRE(sn.has_value());
    CHECK(std::abs(sn->first - 0.0) <= gn.dx() + 1e-12);
    CHECK(std::abs(sn->second - 2.0) <= gn.dx() + 1e-12);
}

TEST_CASE("approximate_delta mass contract") {
    Grid1D g = make_uniform_grid(-1.0, 1.0, 1000);
    for (double m : {0.1, 1.0, 10.0}) {
        auto d = approximate_delta(Mass(m), 0.0, 0.1, g);
        CHECK(std::abs(mass_of(d) - m) <= 1e-12 * (1.0 + m));
        for (double v : d.values) CHECK(v >= 0.0);
    }
}

TEST_CASE("approximate_delta linearity in m") {
    Grid1D g = make_uniform_grid(-1.0, 1.0, 1000);
    auto d1 = approximate_delta(Mass(1.0), 0.0, 0.1, g);
    auto d2 = approximate_delta(Mass(2.0), 0.0, 0.1, g);
    for (int i = 0; i < d1.size(); ++i)
        CHECK(d2[i] == doctest::Approx(2.0 * d1[i]));
}

TEST_CASE("approximate_delta rejects bad bumps") {
    Grid1D g = make_uniform_grid(-1.0, 1.0, 100);
    CHECK_THROWS(approximate_delta(Mass(1.0), 0.0, g.dx() / 2.0, g));
    CHECK_THROWS(approximate_delta(Mass(1.0), 0.99, 0.5, g));  // exits domain
}

TEST_CASE("csv round trip") {
    Grid1D g = make_uniform_grid(-1.0, 1.0, 16);
    auto u = sample(g, [](double x) { return std::exp(-x * x); }, 0.75);
    std::string path = "test_grid_roundtrip.csv";
    write_csv(u, path);
    auto v = read_frame_csv(path);
    REQUIRE(v.size() == u.size());
    CHECK(v.time_tag == doctest::Approx(u.time_tag));
    for (int i = 0; i < u.size(); ++i)
        CHECK(v[i] == doctest::Approx(u[i]).epsilon(1e-14));
    std::remove(path.c_str());
}
