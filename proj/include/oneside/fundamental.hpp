#pragma once

#include <functional>
#include <span>
#include <string>

#include "oneside/flux.hpp"
#include "oneside/grid.hpp"

namespace oneside {

// Closed-form or grid-sampled fundamental solution rho_m^c with mass,
// background and shift.
struct FundamentalSolution {
    enum class Kind { nwave, barenblatt, heat_kernel, numeric };
    Kind kind;
    double mass;
    double background = 0.0;
    double shift = 0.0;
    std::string param_label;                         // flux label or gamma
    std::function<double(double x, double t)> eval;  // closed-form kinds
    GridFunction1D frame;                            // numeric kind

    double operator()(double x, double t) const { return eval(x - shift, t); }
};

// Support edge a_m(t) of the N-wave from the equal-area rule
// integral_0^a g(x/t) dx = m, by quadrature plus bisection.
double nwave_support_edge(const Flux& f, Mass m, double t);

// Sampled N-wave: g(x/t) on (0, a_m(t)), zero elsewhere.
GridFunction1D nwave(const Flux& f, Mass m, double t, const Grid1D& grid);
FundamentalSolution nwave_solution(const Flux& f, Mass m);

// Coefficient C_m of the Barenblatt profile, solved from mass_of = m by
// bisection (the mass is strictly increasing in C_m).
double barenblatt_coefficient(double gamma, Mass m, double t);
double barenblatt_mass_of_coefficient(double gamma, double c, double t);
double barenblatt_value(double gamma, double c_m, double x, double t);
GridFunction1D barenblatt(double gamma, Mass m, double t, const Grid1D& grid);
FundamentalSolution barenblatt_solution(double gamma, Mass m);

// m * (4 pi t)^(-n/2) exp(-|x|^2 / 4t)
double heat_kernel(Mass m, double t, int n_dim, std::span<const double> point);
FundamentalSolution heat_kernel_solution(Mass m);

// L1 discrepancy of rho_m(m x, m t) against rho_1(x, t) sampled on `grid`.
double similarity_check(const FundamentalSolution& rho_m,
                        const FundamentalSolution& rho_1, Mass m, double t,
                        const Grid1D& grid);

FundamentalSolution numeric_solution(GridFunction1D frame, Mass m,
                                     double background, std::string label);

}  // namespace oneside
