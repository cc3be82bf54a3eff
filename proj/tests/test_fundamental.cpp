#include <doctest.h>

#include <cmath>
#include <numbers>
#include <span>

#include "oneside/fundamental.hpp"
#include "oneside/grid.hpp"
#include "oneside/levelset.hpp"

using namespace oneside;

TEST_CASE("N-wave support edge: equal-area rule") {
    Flux b = burgers_flux();
    // closed form for Burgers: a = sqrt(2 m t)
    CHECK(nwave_support_edge(b, Mass(2.0), 1.0) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(nwave_support_edge(b, Mass(0.5), 1.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(nwave_support_edge(b, Mass(2.0), 4.0) ==
          doctest::Approx(4.0).epsilon(1e-9));

    // a is monotone in m and shrinks toward zero
    double prev = 0.0;
    for (double m : {1e-3, 1e-2, 0.1, 1.0}) {
        double a = nwave_support_edge(b, Mass(m), 1.0);
        CHECK(a > prev);
        prev = a;
    }
    CHECK(nwave_support_edge(b, Mass(1e-6), 1.0) < 2e-3);
}

TEST_CASE("N-wave profile is the rarefaction ramp") {
    Flux b = burgers_flux();
    Grid1D g = make_uniform_grid(-1.0, 3.0, 400);
    auto u = nwave(b, Mass(2.0), 1.0, g);
    for (int i = 0; i < u.size(); ++i) {
        double x = g.node(i);
        if (x <= 0.0 || x >= 2.0)
            CHECK(u[i] == 0.0);
        else
            CHECK(u[i] == doctest::Approx(x).epsilon(1e-9));
    }
    Grid1D g4 = make_uniform_grid(-1.0, 5.0, 600);
    auto u4 = nwave(b, Mass(2.0), 4.0, g4);
    CHECK(u4.interp(2.0) == doctest::Approx(0.5).epsilon(1e-6));

    // grid must contain the support
    CHECK_THROWS(nwave(b, Mass(2.0), 1.0, make_uniform_grid(-1.0, 1.5, 100)));
}

TEST_CASE("Barenblatt gamma=2: mass and profile") {
    double c1 = barenblatt_coefficient(2.0, Mass(1.0), 1.0);
    Grid1D g = make_uniform_grid(-4.0, 4.0, 2000);
    auto rho = barenblatt(2.0, Mass(1.0), 1.0, g);
    CHECK(std::abs(mass_of(rho) - 1.0) <= 1e-6);
    // profile is (C1 - x^2/12)_+ with support edge sqrt(12 C1)
    for (double x : {0.0, 0.3, 0.9})
        CHECK(rho.interp(x) ==
              doctest::Approx(std::max(0.0, c1 - x * x / 12.0)).epsilon(1e-4));
    double edge = std::sqrt(12.0 * c1);
    CHECK(rho.interp(edge + 0.05) == doctest::Approx(0.0));
    CHECK(std::abs(barenblatt_mass_of_coefficient(2.0, c1, 1.0) - 1.0) <=
          1e-8);
}

TEST_CASE("Barenblatt naive linear scaling in m must fail for gamma != 1") {
    Grid1D g = make_uniform_grid(-6.0, 6.0, 1200);
    auto r1 = barenblatt(2.0, Mass(1.0), 1.0, g);
    auto r2 = barenblatt(2.0, Mass(2.0), 1.0, g);
    auto scaled = r1;
    for (double& v : scaled.values) v *= 2.0;
    CHECK(l1_distance(scaled, r2) > 1e-2);  // nonlinear equation: 2 r1 != r2
}

TEST_CASE("Barenblatt pressure curvature equality") {
    // second difference of the pressure (gamma/(gamma-1)) u^(gamma-1)
    // equals -1/(t (gamma+1)) inside the support / everywhere (FDE)
    for (double gamma : {0.5, 2.0, 3.0}) {
        Grid1D g = make_uniform_grid(-3.0, 3.0, 3000);
        double cm = barenblatt_coefficient(gamma, Mass(1.0), 1.0);
        auto rho = sample(
            g, [&](double x) { return barenblatt_value(gamma, cm, x, 1.0); });
        double dx = g.dx();
        double target = -1.0 / (1.0 * (gamma + 1.0));
        double floor = 0.05 * rho.max_value();
        for (int i = 1; i + 1 < rho.size(); ++i) {
            if (rho[i - 1] <= floor || rho[i] <= floor || rho[i + 1] <= floor)
                continue;
            auto pressure = [&](double u) {
                return gamma / (gamma - 1.0) * std::pow(u, gamma - 1.0);
            };
            double second = (pressure(rho[i + 1]) - 2.0 * pressure(rho[i]) +
                             pressure(rho[i - 1])) /
                            (dx * dx);
            CHECK(std::abs(second - target) <= 1e-6 * (1.0 + std::abs(target)));
        }
    }
}

TEST_CASE("FDE coefficient bracket works on both branches") {
    for (double gamma : {0.5, 2.0}) {
        double c = barenblatt_coefficient(gamma, Mass(3.0), 0.7);
        CHECK(std::abs(barenblatt_mass_of_coefficient(gamma, c, 0.7) - 3.0) <=
              1e-8 * 3.0);
    }
    CHECK_THROWS(barenblatt_coefficient(1.0, Mass(1.0), 1.0));
    CHECK_THROWS(barenblatt_coefficient(2.0, Mass(1.0), 0.0));
}

TEST_CASE("heat kernel") {
    // normalization by quadrature
    Grid1D g = make_uniform_grid(-12.0, 12.0, 4000);
    auto phi = sample(g, [](double x) {
        return heat_kernel(Mass(1.0), 1.0, 1, std::span<const double>(&x, 1));
    });
    CHECK(mass_of(phi) == doctest::Approx(1.0).epsilon(1e-8));

    // peak value at t = 1/(4 pi) is exactly m
    double t0 = 1.0 / (4.0 * std::numbers::pi);
    double zero = 0.0;
    CHECK(heat_kernel(Mass(2.5), t0, 1, std::span<const double>(&zero, 1)) ==
          doctest::Approx(2.5).epsilon(1e-12));

    // symmetry
    double xp = 1.37, xm = -1.37;
    CHECK(heat_kernel(Mass(1.0), 0.3, 1, std::span<const double>(&xp, 1)) ==
          doctest::Approx(
              heat_kernel(Mass(1.0), 0.3, 1,
                          std::span<const double>(&xm, 1))));

    CHECK_THROWS(heat_kernel(Mass(1.0), 0.0, 1,
                             std::span<const double>(&zero, 1)));
    // heat equation is linear: rho_m = m rho_1 exactly
    double x = 0.8;
    CHECK(heat_kernel(Mass(3.0), 0.5, 1, std::span<const double>(&x, 1)) ==
          doctest::Approx(3.0 * heat_kernel(Mass(1.0), 0.5, 1,
                                            std::span<const double>(&x, 1))));
}

TEST_CASE("similarity law for closed-form N-waves") {
    Flux b = burgers_flux();
    Grid1D g = make_uniform_grid(-1.0, 3.0, 1000);
    auto r1 = nwave_solution(b, Mass(1.0));
    auto r2 = nwave_solution(b, Mass(2.0));
    CHECK(similarity_check(r2, r1, Mass(2.0), 1.0, g) <= g.dx());
    CHECK(similarity_check(r1, r1, Mass(1.0), 1.0, g) <=
          1e-12);  // identity case
}

TEST_CASE("fundamental frames have no wrinkles") {
    Grid1D g = make_uniform_grid(-4.0, 4.0, 1500);
    auto nw = nwave(burgers_flux(), Mass(1.0), 1.0, g);
    auto bb = barenblatt(2.0, Mass(1.0), 1.0, g);
    auto hk = sample(g, [](double x) {
        return heat_kernel(Mass(1.0), 0.5, 1, std::span<const double>(&x, 1));
    });
    double tol = 1e-9;
    CHECK(monotonicity_changes(nw, tol * nw.max_value()) == 1);
    CHECK(monotonicity_changes(bb, tol * bb.max_value()) == 1);
    CHECK(monotonicity_changes(hk, tol * hk.max_value()) == 1);
}

TEST_CASE("fundamental solution objects shift correctly") {
    auto s = nwave_solution(burgers_flux(), Mass(2.0));
    s.shift = 0.5;
    // rho_{m,x0}(x,t) = rho_m(x - x0, t)
    CHECK(s(1.5, 1.0) == doctest::Approx(s.eval(1.0, 1.0)));
}
