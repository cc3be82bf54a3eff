#include "oneside/families.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "oneside/fundamental.hpp"

namespace oneside {

namespace {

double bump(double x, double c, double w) {
    double s = (x - c) / w;
    double q = 1.0 - s * s;
    return q > 0.0 ? q * q : 0.0;
}

std::mt19937_64 member_rng(std::uint64_t seed, int index) {
    return std::mt19937_64(seed * 1000003ULL + 0x9e3779b97f4a7c15ULL +
                           static_cast<std::uint64_t>(index));
}

}  // namespace

std::vector<Flux> convex_flux_family(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> a2d(0.3, 1.2), a3d(0.0, 0.3),
        a4d(0.0, 0.15);
    std::vector<Flux> fam;
    fam.reserve(count);
    for (int k = 0; k < count; ++k) {
        double a2 = a2d(rng), a3 = a3d(rng), a4 = a4d(rng);
        auto eval = [a2, a3, a4](double u) {
            return u * u * (a2 + u * (a3 + u * a4));
        };
        auto deriv = [a2, a3, a4](double u) {
            return u * (2.0 * a2 + u * (3.0 * a3 + u * 4.0 * a4));
        };
        fam.push_back(make_flux(eval, deriv, "family-" + std::to_string(k),
                                Flux::Hint::convex, 8.0));
    }
    return fam;
}

GridFunction1D convex_family_profile(const Flux& f, int index, double t,
                                     const Grid1D& grid, std::uint64_t seed) {
    auto rng = member_rng(seed, index);
    std::uniform_real_distribution<double> md(0.5, 3.0), ld(0.3, 0.9);
    double m = md(rng);
    double lambda = ld(rng);
    // shrink the mass until the profile fits comfortably inside the grid
    double a = nwave_support_edge(f, Mass(m), t);
    while (a > 0.8 * grid.x_max && m > 1e-3) {
        m *= 0.5;
        a = nwave_support_edge(f, Mass(m), t);
    }
    switch (index % 3) {
        case 0:
            return nwave(f, Mass(m), t, grid);
        case 1: {
            auto u = nwave(f, Mass(m), t, grid);
            for (int i = 0; i < u.size(); ++i) u[i] *= lambda;
            return u;
        }
        default:  // mirror image: the terminating shock becomes increasing
            return sample(
                grid,
                [&](double x) {
                    double y = a - x;
                    if (y <= 0.0 || y >= a) return 0.0;
                    return rarefaction_profile(f, y / t);
                },
                t);
    }
}

bool convex_family_member_holds(int index) { return index % 3 != 2; }

std::vector<PmeMember> pme_family(int count) {
    std::vector<PmeMember> fam;
    fam.reserve(count);
    for (int k = 0; k < count; ++k)
        fam.push_back({k % 2 == 0 ? 2.0 : 0.5, k});
    return fam;
}

GridFunction1D pme_family_profile(const PmeMember& member, double t,
                                  const Grid1D& grid, std::uint64_t seed) {
    auto rng = member_rng(seed, member.index);
    std::uniform_real_distribution<double> md(0.5, 3.0);
    double m = md(rng);
    double gamma = member.gamma;
    double c_m = barenblatt_coefficient(gamma, Mass(m), t);
    std::uniform_real_distribution<double> scaled(
        gamma > 1.0 ? 0.4 : 1.1, gamma > 1.0 ? 0.9 : 2.0);
    double lambda = scaled(rng);
    int type = member.index % 3;
    return sample(
        grid,
        [&](double x) {
            double v = barenblatt_value(gamma, c_m, x, t);
            if (type == 1) return lambda * v;
            if (type == 2) return v * (1.0 - 0.35 * bump(x, 0.5, 0.4));
            return v;
        },
        t);
}

bool pme_family_member_holds(const PmeMember& member) {
    return member.index % 3 != 2;
}

GridFunction1D random_bumps(const Grid1D& grid, std::uint64_t seed,
                            int max_bumps, double background,
                            double support_radius) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nb(1, std::max(1, max_bumps));
    std::uniform_real_distribution<double> wd(0.15, 0.5), cd(-1.0, 1.0),
        hd(0.2, 1.0);
    int n = nb(rng);
    std::vector<std::array<double, 3>> bumps;
    for (int k = 0; k < n; ++k) {
        double w = wd(rng) * support_radius;
        double c = cd(rng) * (support_radius - w);
        bumps.push_back({c, w, hd(rng)});
    }
    return sample(grid, [&](double x) {
        double v = background;
        for (const auto& b : bumps) v += b[2] * bump(x, b[0], b[1]);
        return v;
    });
}

GridFunctionND random_bumps_2d(const std::vector<Grid1D>& axes,
                               std::uint64_t seed, int max_bumps,
                               double support_radius) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> nb(2, std::max(2, max_bumps));
    std::uniform_real_distribution<double> wd(0.2, 0.6), cd(-1.0, 1.0),
        hd(0.2, 1.0);
    int n = nb(rng);
    std::vector<std::array<double, 5>> bumps;  // cx, cy, wx, wy, h
    for (int k = 0; k < n; ++k) {
        double wx = wd(rng) * support_radius;
        double wy = wd(rng) * support_radius;
        bumps.push_back({cd(rng) * (support_radius - wx),
                         cd(rng) * (support_radius - wy), wx, wy, hd(rng)});
    }
    return sample_nd(axes, [&](const std::vector<double>& x) {
        double v = 0.0;
        for (const auto& b : bumps)
            v += b[4] * bump(x[0], b[0], b[2]) * bump(x[1], b[1], b[3]);
        return v;
    });
}

}  // namespace oneside
