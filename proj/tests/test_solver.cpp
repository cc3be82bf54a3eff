#include <doctest.h>

#include <cmath>
#include <random>
#include <span>
#include <stdexcept>
#include <string>

#include "oneside/fundamental.hpp"
#include "oneside/grid.hpp"
#include "oneside/solver.hpp"

using namespace oneside;

TEST_CASE("parabolicity verification") {
    CHECK_NOTHROW(verify_parabolicity(heat_problem(0.0), 1.0, 2.0, 2.0, 2.0,
                                      2.0));
    CHECK_NOTHROW(verify_parabolicity(
        viscous_conservation_law(burgers_flux(), 1e-2), 1.0, 2.0, 2.0, 2.0,
        1.0));
    CHECK_NOTHROW(verify_parabolicity(pme_problem(2.0, 1e-3), 1.0, 2.0, 2.0,
                                      2.0, 10.0));

    // anti-diffusive right-hand side violates the eps floor
    ParabolicProblem bad = heat_problem(0.0);
    bad.eps = 2.0;  // claims more diffusion than sigma provides
    CHECK_THROWS(verify_parabolicity(bad, 1.0, 1.0, 1.0, 1.0, 5.0));
}

TEST_CASE("solver config parsing") {
    SolverConfig cfg = parse_solver_config(
        "# comment\n"
        "grid.n = 800\n"
        "grid.radius = 7.5\n"
        "cfl = 0.3\n"
        "eps_list = 1e-1, 1e-2, 1e-3, 1e-4\n"
        "bump_width = 0.25\n");
    CHECK(cfg.grid_n == 800);
    CHECK(cfg.grid_radius == doctest::Approx(7.5));
    CHECK(cfg.cfl == doctest::Approx(0.3));
    REQUIRE(cfg.eps_list.size() == 4);
    CHECK(cfg.eps_list[3] == doctest::Approx(1e-4));
    CHECK(cfg.bump_width == doctest::Approx(0.25));
}

TEST_CASE("solver config errors are collected, not first-failed") {
    try {
        parse_solver_config(
            "grid.n = banana\n"
            "no_equals_sign_here\n"
            "mystery.key = 3\n");
        FAIL("expected a config exception");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("grid.n") != std::string::npos);
        CHECK(msg.find("no_equals_sign_here") != std::string::npos);
        CHECK(msg.find("mystery.key") != std::string::npos);
    }
}

TEST_CASE("heat solve matches the exact kernel") {
    SolverConfig cfg;
    cfg.grid_n = 1200;
    Grid1D g = make_uniform_grid(-8.0, 8.0, cfg.grid_n);
    GridFunction1D u0 = approximate_delta(Mass(1.0), 0.0, 0.05, g);
    Trajectory tr = solve(heat_problem(0.0), u0, {0.5}, cfg);
    REQUIRE(tr.frames.size() == 1);
    auto exact = sample(
        g,
        [&](double x) {
            return heat_kernel(Mass(1.0), 0.5, 1,
                               std::span<const double>(&x, 1));
        },
        0.5);
    CHECK(l1_distance(tr.frames[0], exact) <= 1e-3);
}

TEST_CASE("viscous Burgers transports the N-wave") {
    SolverConfig cfg;
    cfg.grid_n = 2000;
    Grid1D g = make_uniform_grid(-2.0, 5.0, cfg.grid_n);
    Flux b = burgers_flux();
    GridFunction1D u0 = nwave(b, Mass(1.0), 1.0, g);
    u0.time_tag = 0.0;  // solver time starts at 0 = physical t=1
    Trajectory tr = solve(viscous_conservation_law(b, 1e-3), u0, {1.0}, cfg);
    GridFunction1D exact = nwave(b, Mass(1.0), 2.0, g);
    CHECK(l1_distance(tr.frames[0], exact) <= 1e-2);
}

TEST_CASE("constant data is a steady state") {
    SolverConfig cfg;
    cfg.grid_n = 200;
    Grid1D g = make_uniform_grid(-2.0, 2.0, cfg.grid_n);
    double a = 0.7;
    auto u0 = sample(g, [&](double) { return a; });
    Trajectory tr =
        solve(viscous_conservation_law(burgers_flux(), 1e-2, a), u0, {0.5},
              cfg);
    for (double v : tr.frames[0].values)
        CHECK(v == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("mass conservation") {
    SolverConfig cfg;
    cfg.grid_n = 800;
    Grid1D g = make_uniform_grid(-10.0, 10.0, cfg.grid_n);
    GridFunction1D u0 = approximate_delta(Mass(1.5), 0.3, 0.4, g);
    Trajectory tr = solve(heat_problem(0.0), u0, {0.2, 0.5, 1.0}, cfg);
    for (const auto& fr : tr.frames)
        CHECK(std::abs(mass_of(fr) - 1.5) <= 1e-6 * 1.5);
}

TEST_CASE("comparison principle on random pairs") {
    SolverConfig cfg;
    // centered advection is order-preserving only below cell Peclet 2:
    // |f'| dx / eps = 1.4 * 0.008 / 1e-2 < 2 at this resolution
    cfg.grid_n = 1000;
    Grid1D g = make_uniform_grid(-4.0, 4.0, cfg.grid_n);
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> U(0.3, 1.5);
    for (int trial = 0; trial < 5; ++trial) {
        double w1 = U(rng), w2 = U(rng), c1 = U(rng) - 0.9, c2 = U(rng) - 0.9;
        auto lo = sample(g, [&](double x) {
            double q = 1.0 - std::pow((x - c1) / w1, 2);
            return q > 0.0 ? 0.8 * q * q : 0.0;
        });
        auto hi = sample(g, [&](double x) {
            double q = 1.0 - std::pow((x - c2) / w2, 2);
            double bump = q > 0.0 ? 0.6 * q * q : 0.0;
            return lo.interp(x) + bump;  // hi >= lo nodewise by construction
        });
        Trajectory tl =
            solve(viscous_conservation_law(burgers_flux(), 1e-2), lo, {0.5},
                  cfg);
        Trajectory th =
            solve(viscous_conservation_law(burgers_flux(), 1e-2), hi, {0.5},
                  cfg);
        double scale = th.frames[0].max_abs();
        for (int i = 0; i < tl.frames[0].size(); ++i)
            CHECK(tl.frames[0][i] <= th.frames[0][i] + 1e-8 * scale);
    }
}

TEST_CASE("fundamental frames are ordered in m") {
    SolverConfig cfg;
    cfg.grid_n = 800;
    Grid1D g = make_uniform_grid(-5.0, 5.0, cfg.grid_n);
    std::vector<GridFunction1D> frames;
    for (double m : {0.5, 1.0, 2.0}) {
        GridFunction1D u0 = approximate_delta(Mass(m), 0.0, 1.2, g);
        frames.push_back(
            solve(viscous_conservation_law(burgers_flux(), 1e-2), u0, {1.0},
                  cfg)
                .frames[0]);
    }
    for (size_t k = 0; k + 1 < frames.size(); ++k) {
        double floor = 1e-8 * frames[k + 1].max_value();
        for (int i = 1; i + 1 < frames[k].size(); ++i) {
            CHECK(frames[k][i] <= frames[k + 1][i] + 1e-10);
            if (frames[k + 1][i] > floor && frames[k][i] > floor)
                CHECK(frames[k][i] < frames[k + 1][i]);
        }
    }
}

TEST_CASE("continuation guards") {
    SolverConfig cfg;
    cfg.grid_n = 200;
    Grid1D g = make_uniform_grid(-3.0, 3.0, cfg.grid_n);
    GridFunction1D u0 = approximate_delta(Mass(1.0), 0.0, 0.5, g);
    ProblemFamily fam = [](double eps) { return heat_problem(eps); };
    CHECK_THROWS(viscosity_continuation(fam, u0, {1e-1, 1e-2}, 0.5, cfg));
    CHECK_THROWS(
        viscosity_continuation(fam, u0, {1e-1, 1e-1, 1e-2, 1e-3}, 0.5, cfg));
}

TEST_CASE("heat continuation gaps shrink with eps") {
    SolverConfig cfg;
    cfg.grid_n = 400;
    Grid1D g = make_uniform_grid(-6.0, 6.0, cfg.grid_n);
    GridFunction1D u0 = approximate_delta(Mass(1.0), 0.0, 0.5, g);
    ProblemFamily fam = [](double eps) { return heat_problem(eps); };
    ContinuationResult r =
        viscosity_continuation(fam, u0, {1e-1, 3e-2, 1e-2, 3e-3}, 0.4, cfg);
    REQUIRE(r.cauchy_gaps.size() == 3);
    for (size_t i = 0; i + 1 < r.cauchy_gaps.size(); ++i)
        CHECK(r.cauchy_gaps[i + 1] < r.cauchy_gaps[i]);
    CHECK(r.cauchy);
}

TEST_CASE("solve rejects bad output times") {
    SolverConfig cfg;
    Grid1D g = make_uniform_grid(-2.0, 2.0, 100);
    auto u0 = sample(g, [](double) { return 0.0; });
    CHECK_THROWS(solve(heat_problem(0.0), u0, {}, cfg));
    CHECK_THROWS(solve(heat_problem(0.0), u0, {0.0, 1.0}, cfg));
    CHECK_THROWS(solve(heat_problem(0.0), u0, {1.0, 0.5}, cfg));
}
