#pragma once

#include <functional>
#include <string>
#include <vector>

#include "oneside/flux.hpp"
#include "oneside/grid.hpp"

namespace oneside {

// Right-hand side u_t = sigma(t, u, u_x, u_xx) of a perturbed uniformly
// parabolic problem, together with the partial derivatives the CFL control
// needs.
struct ParabolicProblem {
    using Sigma = std::function<double(double t, double z, double p, double q)>;
    Sigma sigma;
    Sigma dsigma_dp;  // wave speed bound
    Sigma dsigma_dq;  // diffusion coefficient
    double eps = 0.0;
    std::string label;
    double background = 0.0;  // far-field value c >= 0
};

// sigma = -f'(z) p + eps q
ParabolicProblem viscous_conservation_law(const Flux& f, double eps,
                                          double background = 0.0);
// 1-D porous medium / fast diffusion with additive regularization:
// sigma = gamma(gamma-1) z^{gamma-2} p^2 + gamma z^{gamma-1} q + eps q,
// with z clamped below by z_floor in the degenerate coefficients.
ParabolicProblem pme_problem(double gamma, double eps, double z_floor = 1e-10);
// sigma = (1 + eps) q
ParabolicProblem heat_problem(double eps);

// Samples eps <= dsigma_dq <= bound over a (t, z, p, q) box by finite
// differences of sigma; throws when violated.  Test hook for the
// parabolicity invariant.
void verify_parabolicity(const ParabolicProblem& p, double t_max, double z_max,
                         double p_max, double q_max, double upper_bound);

struct SolverConfig {
    int grid_n = 4000;
    double grid_radius = 5.0;
    double cfl = 0.4;
    std::vector<double> eps_list{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
    double bump_width = 0.0;  // 0 = auto: max(20 dx, 0.02 sqrt(t_first))
    double z_floor = 1e-10;
    std::vector<double> t_out;
    int workers = 1;
};

// Flat key=value text (keys: grid.n, grid.radius, cfl, eps_list, bump_width,
// z_floor, t_out, workers; lists comma-separated).
SolverConfig parse_solver_config(const std::string& text);
SolverConfig load_solver_config(const std::string& path);

struct Trajectory {
    std::vector<GridFunction1D> frames;
    ParabolicProblem problem;
    SolverConfig config;
    long long steps_taken = 0;
};

// Method of lines: centered second-order differences in space, forward Euler
// in time with adaptive step dt <= cfl * min(dx/max|sigma_p|,
// dx^2/(2 max sigma_q)).  Dirichlet boundary at the background value; a
// posteriori boundary-contamination check.
Trajectory solve(const ParabolicProblem& p, const GridFunction1D& u0,
                 const std::vector<double>& t_out, const SolverConfig& cfg);

struct ContinuationResult {
    GridFunction1D finest;               // frame at the smallest eps
    std::vector<double> cauchy_gaps;     // L1 gaps between consecutive frames
    bool cauchy = true;                  // false when a gap ratio exceeds 0.9
};

using ProblemFamily = std::function<ParabolicProblem(double eps)>;

ContinuationResult viscosity_continuation(const ProblemFamily& family,
                                          const GridFunction1D& u0,
                                          const std::vector<double>& eps_list,
                                          double t, const SolverConfig& cfg);

// Zero-viscosity fundamental solution approximation: continuation from
// c + (triangular bump of mass m at x0).
GridFunction1D fundamental_numeric(const ProblemFamily& family, Mass m,
                                   double x0, double c, double t,
                                   const SolverConfig& cfg);

}  // namespace oneside
