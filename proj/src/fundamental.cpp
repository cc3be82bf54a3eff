#include "oneside/fundamental.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace oneside {

namespace {

// Simpson rule on [a, b] with n (even) intervals.
template <class F>
double simpson(F&& f, double a, double b, int n = 256) {
    double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// N-wave mass as a function of the crest value ubar:
//   integral_0^{a} g(x/t) dx  with a = t f'(ubar)
//   = t ( ubar f'(ubar) - integral_0^{ubar} f'(u) du ),
// increasing in ubar.
double nwave_mass_of_crest(const Flux& f, double t, double ubar) {
    double integral = simpson([&](double u) { return f.deriv(u); }, 0.0, ubar);
    return t * (ubar * f.deriv(ubar) - integral);
}

}  // namespace

double nwave_support_edge(const Flux& f, Mass m, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("nwave needs t > 0");
    double hi = f.u_max;
    if (nwave_mass_of_crest(f, t, hi) < m.value)
        throw std::invalid_argument(
            "flux derivative range too small for requested mass (f' bounded)");
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (nwave_mass_of_crest(f, t, mid) < m.value)
            lo = mid;
        else
            hi = mid;
    }
    return t * f.deriv(0.5 * (lo + hi));
}

GridFunction1D nwave(const Flux& f, Mass m, double t, const Grid1D& grid) {
    double a = nwave_support_edge(f, m, t);
    if (grid.x_min > 0.0 || grid.x_max < a)
        throw std::invalid_argument("grid does not contain the N-wave support");
    return sample(
        grid,
        [&](double x) {
            if (x <= 0.0 || x >= a) return 0.0;
            return rarefaction_profile(f, x / t);
        },
        t);
}

FundamentalSolution nwave_solution(const Flux& f, Mass m) {
    FundamentalSolution s;
    s.kind = FundamentalSolution::Kind::nwave;
    s.mass = m.value;
    s.param_label = f.label;
    // the support edge only depends on t; cache it so pointwise evaluation
    // along a frame does not redo the equal-area bisection per node
    auto cache = std::make_shared<std::map<double, double>>();
    auto guard = std::make_shared<std::mutex>();
    s.eval = [f, m, cache, guard](double x, double t) {
        double a;
        {
            std::lock_guard<std::mutex> lock(*guard);
            auto it = cache->find(t);
            if (it == cache->end())
                it = cache->emplace(t, nwave_support_edge(f, m, t)).first;
            a = it->second;
        }
        if (x <= 0.0 || x >= a) return 0.0;
        return rarefaction_profile(f, x / t);
    };
    return s;
}

namespace {

// Mass of the Barenblatt profile with coefficient C at time t, by Simpson
// quadrature after a trigonometric substitution that removes the support-edge
// kink (gamma > 1) or maps the whole line to a bounded interval (gamma < 1).
double barenblatt_mass(double gamma, double c, double t) {
    double alpha = (1.0 - gamma) / (gamma + 1.0);
    double k = (gamma - 1.0) / (2.0 * gamma * (gamma + 1.0));
    double beta = 1.0 / (gamma - 1.0);
    double height = c * std::pow(t, alpha);
    double half_pi = std::numbers::pi / 2.0;
    if (gamma > 1.0) {
        double edge = std::sqrt(height * t / k);  // (C t^a - k x^2/t) = 0
        auto integrand = [&](double th) {
            double cth = std::cos(th);
            return std::pow(cth, 2.0 * beta + 1.0);
        };
        return edge * std::pow(height, beta) *
               simpson(integrand, -half_pi, half_pi, 512);
    }
    double scale = std::sqrt(height * t / (-k));
    auto integrand = [&](double th) {
        double cth = std::cos(th);
        return std::pow(cth, -2.0 * beta - 2.0);
    };
    return scale * std::pow(height, beta) *
           simpson(integrand, -half_pi, half_pi, 512);
}

}  // namespace

double barenblatt_mass_of_coefficient(double gamma, double c, double t) {
    if (!(gamma > 0.0) || gamma == 1.0)
        throw std::invalid_argument("barenblatt needs gamma > 0, gamma != 1");
    if (!(c > 0.0) || !(t > 0.0))
        throw std::invalid_argument("barenblatt mass needs c > 0, t > 0");
    return barenblatt_mass(gamma, c, t);
}

double barenblatt_coefficient(double gamma, Mass m, double t) {
    if (!(gamma > 0.0) || gamma == 1.0)
        throw std::invalid_argument("barenblatt needs gamma > 0, gamma != 1");
    if (!(t > 0.0)) throw std::invalid_argument("barenblatt needs t > 0");
    // mass is increasing in C for gamma > 1 (taller, wider cap) but
    // decreasing for the FDE branch (inverse-power profile)
    bool increasing = gamma > 1.0;
    auto below = [&](double c) {
        double mass = barenblatt_mass(gamma, c, t);
        return increasing ? mass < m.value : mass > m.value;
    };
    double lo = 1.0, hi = 1.0;
    while (below(hi)) {
        hi *= 2.0;
        if (hi > 1e150) throw std::runtime_error("barenblatt C_m bracket failed");
    }
    while (!below(lo)) {
        lo *= 0.5;
        if (lo < 1e-150)
            throw std::runtime_error("barenblatt C_m bracket failed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (below(mid))
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double barenblatt_value(double gamma, double c_m, double x, double t) {
    double alpha = (1.0 - gamma) / (gamma + 1.0);
    double k = (gamma - 1.0) / (2.0 * gamma * (gamma + 1.0));
    double inside = c_m * std::pow(t, alpha) - k * x * x / t;
    if (inside <= 0.0) return 0.0;  // only reachable for gamma > 1
    return std::pow(inside, 1.0 / (gamma - 1.0));
}

GridFunction1D barenblatt(double gamma, Mass m, double t, const Grid1D& grid) {
    double c_m = barenblatt_coefficient(gamma, m, t);
    auto u = sample(
        grid, [&](double x) { return barenblatt_value(gamma, c_m, x, t); }, t);
    if (gamma < 1.0) {
        // FDE tails are power-law; the omitted tail mass must be negligible
        double inside = mass_of(u);
        if (m.value - inside > 1e-8 * m.value)
            throw std::invalid_argument(
                "FDE tail mass exceeds tolerance (enlarge domain)");
    }
    return u;
}

FundamentalSolution barenblatt_solution(double gamma, Mass m) {
    FundamentalSolution s;
    s.kind = FundamentalSolution::Kind::barenblatt;
    s.mass = m.value;
    s.param_label = "gamma=" + std::to_string(gamma);
    // C_m depends only on t; cache it across pointwise evaluations
    auto cache = std::make_shared<std::map<double, double>>();
    auto guard = std::make_shared<std::mutex>();
    s.eval = [gamma, m, cache, guard](double x, double t) {
        double c_m;
        {
            std::lock_guard<std::mutex> lock(*guard);
            auto it = cache->find(t);
            if (it == cache->end())
                it = cache->emplace(t, barenblatt_coefficient(gamma, m, t))
                         .first;
            c_m = it->second;
        }
        return barenblatt_value(gamma, c_m, x, t);
    };
    return s;
}

double heat_kernel(Mass m, double t, int n_dim, std::span<const double> point) {
    if (!(t > 0.0)) throw std::invalid_argument("heat kernel needs t > 0");
    if (n_dim < 1 || static_cast<int>(point.size()) != n_dim)
        throw std::invalid_argument("heat kernel dimension mismatch");
    double r2 = 0.0;
    for (double x : point) r2 += x * x;
    double norm = std::pow(4.0 * std::numbers::pi * t, -0.5 * n_dim);
    return m.value * norm * std::exp(-r2 / (4.0 * t));
}

FundamentalSolution heat_kernel_solution(Mass m) {
    FundamentalSolution s;
    s.kind = FundamentalSolution::Kind::heat_kernel;
    s.mass = m.value;
    s.param_label = "heat";
    s.eval = [m](double x, double t) {
        return heat_kernel(m, t, 1, std::span<const double>(&x, 1));
    };
    return s;
}

double similarity_check(const FundamentalSolution& rho_m,
                        const FundamentalSolution& rho_1, Mass m, double t,
                        const Grid1D& grid) {
    double s = 0.0;
    for (int i = 0; i < grid.num_nodes(); ++i) {
        double x = grid.node(i);
        double d = std::abs(rho_m.eval(m.value * x, m.value * t) -
                            rho_1.eval(x, t));
        s += (i == 0 || i == grid.n) ? 0.5 * d : d;
    }
    return s * grid.dx();
}

FundamentalSolution numeric_solution(GridFunction1D frame, Mass m,
                                     double background, std::string label) {
    FundamentalSolution s;
    s.kind = FundamentalSolution::Kind::numeric;
    s.mass = m.value;
    s.background = background;
    s.param_label = std::move(label);
    auto shared = std::make_shared<GridFunction1D>(std::move(frame));
    s.frame = *shared;
    s.eval = [shared](double x, double) { return shared->interp(x); };
    return s;
}

}  // namespace oneside
