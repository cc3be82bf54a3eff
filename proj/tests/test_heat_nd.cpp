#include <doctest.h>

#include <cmath>
#include <vector>

#include "oneside/families.hpp"
#include "oneside/fundamental.hpp"
#include "oneside/grid.hpp"
#include "oneside/heat_nd.hpp"

using namespace oneside;

namespace {

std::vector<Grid1D> square(double radius, int n) {
    return {make_uniform_grid(-radius, radius, n),
            make_uniform_grid(-radius, radius, n)};
}

double kernel2(double x, double y, double t) {
    double p[2] = {x, y};
    return heat_kernel(Mass(1.0), t, 2, std::span<const double>(p, 2));
}

}  // namespace

TEST_CASE("heat_convolve semigroup property") {
    double s = 0.5, t = 0.25;
    auto u0 = sample_nd(square(8.0, 96),
                        [&](const std::vector<double>& x) {
                            return kernel2(x[0], x[1], s);
                        },
                        0.0);
    GridFunctionND u = heat_convolve(u0, t);
    auto exact = sample_nd(square(8.0, 96),
                           [&](const std::vector<double>& x) {
                               return kernel2(x[0], x[1], s + t);
                           },
                           t);
    CHECK(l1_distance(u, exact) <= 1e-6);
}

TEST_CASE("heat_convolve of a box indicator: erf product at the center") {
    double t = 0.25;
    auto u0 = sample_nd(square(6.0, 384),
                        [](const std::vector<double>& x) {
                            return (std::abs(x[0]) <= 1.0 &&
                                    std::abs(x[1]) <= 1.0)
                                       ? 1.0
                                       : 0.0;
                        },
                        0.0);
    GridFunctionND u = heat_convolve(u0, t);
    double factor = std::erf(1.0 / (2.0 * std::sqrt(t)));
    CHECK(std::abs(u.interp({0.0, 0.0}) - factor * factor) <= 2e-2);
}

TEST_CASE("heat_convolve of zero is zero") {
    auto u0 = sample_nd(square(3.0, 32),
                        [](const std::vector<double>&) { return 0.0; }, 0.0);
    GridFunctionND u = heat_convolve(u0, 0.5);
    CHECK(u.max_abs() == 0.0);
}

TEST_CASE("psi is constant for a multiple of the fundamental solution") {
    double t = 1.0, c = 0.4;
    auto u = sample_nd(square(7.0, 80),
                       [&](const std::vector<double>& x) {
                           return c * kernel2(x[0], x[1], t);
                       },
                       t);
    PsiField psi = psi_field(u, Mass(1.0), {0.0, 0.0}, t);
    for (double v : psi.psi.values) CHECK(v == doctest::Approx(c).epsilon(1e-9));

    // linearity in m: doubling the mass halves psi
    PsiField psi2 = psi_field(u, Mass(2.0), {0.0, 0.0}, t);
    for (std::size_t k = 0; k < psi.psi.values.size(); ++k)
        CHECK(psi2.psi.values[k] ==
              doctest::Approx(0.5 * psi.psi.values[k]).epsilon(1e-9));
}

TEST_CASE("psi of heat-convolved data is convex along lines") {
    for (std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
        auto u0 = random_bumps_2d(square(9.0, 72), seed);
        GridFunctionND u = heat_convolve(u0, 1.0);
        PsiField psi = psi_field(u, Mass(1.0), {0.0, 0.0}, 1.0);
        NdVerdict v = convexity_check(psi, 12, 1e-8, seed);
        CHECK(v.holds);
        CHECK(v.worst >= -1e-8);
    }
}

TEST_CASE("injected dimple breaks psi convexity") {
    auto u0 = random_bumps_2d(square(9.0, 72), 11);
    GridFunctionND u = heat_convolve(u0, 1.0);
    PsiField psi = psi_field(u, Mass(1.0), {0.0, 0.0}, 1.0);
    psi.exact_eval = nullptr;  // force evaluation of the edited grid values
    // carve a concave dimple into psi near the center
    double scale = psi.psi.max_abs();
    std::vector<int> idx(2, 0);
    for (std::size_t k = 0; k < psi.psi.values.size(); ++k) {
        double x = psi.psi.node(0, idx[0]), y = psi.psi.node(1, idx[1]);
        double r2 = (x - 0.5) * (x - 0.5) + y * y;
        if (r2 < 1.0) psi.psi.values[k] -= 0.5 * scale * (1.0 - r2);
        if (++idx[1] >= psi.psi.extent(1)) {
            idx[1] = 0;
            ++idx[0];
        }
    }
    NdVerdict v = convexity_check(psi, 12, 1e-8, 11);
    CHECK(!v.holds);
}

TEST_CASE("level sets of rho - u are convex for heat data") {
    auto zero = sample_nd(square(6.0, 128),
                          [](const std::vector<double>&) { return 0.0; }, 1.0);
    NdVerdict v = levelset_convexity(zero, Mass(1.0), {0.0, 0.0}, 1.0, 1e-3);
    CHECK(v.holds);

    // two separated bumps, diffused: still convex for a dominating mass
    auto u0 = sample_nd(square(9.0, 96),
                        [](const std::vector<double>& x) {
                            double a = std::exp(-4.0 * ((x[0] - 1.2) * (x[0] - 1.2) +
                                                        x[1] * x[1]));
                            double b = std::exp(-4.0 * ((x[0] + 1.2) * (x[0] + 1.2) +
                                                        x[1] * x[1]));
                            return a + b;
                        },
                        0.0);
    GridFunctionND u = heat_convolve(u0, 1.0);
    NdVerdict v2 = levelset_convexity(u, Mass(8.0), {0.0, 0.0}, 1.0,
                                      1e-6 * u.max_abs());
    CHECK(v2.holds);
}

TEST_CASE("non-heat data can produce a non-convex level set") {
    // a crescent: rho minus a strong off-center spike
    auto u = sample_nd(square(6.0, 128),
                       [](const std::vector<double>& x) {
                           double r2 = (x[0] - 0.9) * (x[0] - 0.9) +
                                       x[1] * x[1];
                           return 0.12 * std::exp(-6.0 * r2);
                       },
                       1.0);
    NdVerdict v = levelset_convexity(u, Mass(1.0), {0.0, 0.0}, 1.0, 1e-3);
    CHECK(!v.holds);
}

TEST_CASE("rotation invariance of the convexity verdict") {
    auto axes = square(9.0, 72);
    auto u0 = random_bumps_2d(axes, 21);
    // rotate the initial data by 90 degrees: (x, y) -> (y, -x) on the
    // symmetric grid is an exact node permutation via interpolation
    auto rot = sample_nd(axes,
                         [&](const std::vector<double>& x) {
                             return u0.interp({x[1], -x[0]});
                         },
                         0.0);
    auto psi_a = psi_field(heat_convolve(u0, 1.0), Mass(1.0), {0.0, 0.0}, 1.0);
    auto psi_b = psi_field(heat_convolve(rot, 1.0), Mass(1.0), {0.0, 0.0}, 1.0);
    NdVerdict va = convexity_check(psi_a, 10, 1e-8, 3);
    NdVerdict vb = convexity_check(psi_b, 10, 1e-8, 3);
    CHECK(va.holds == vb.holds);
}

TEST_CASE("nd frame csv round trip") {
    auto u = sample_nd(square(2.0, 8),
                       [](const std::vector<double>& x) {
                           return std::exp(-x[0] * x[0] - 0.5 * x[1] * x[1]);
                       },
                       0.3);
    std::string path = "test_heat_nd_roundtrip.csv";
    write_csv_nd(u, path);
    auto v = read_frame_csv_nd(path);
    REQUIRE(v.values.size() == u.values.size());
    CHECK(l1_distance(u, v) <= 1e-12);
    std::remove(path.c_str());
}
