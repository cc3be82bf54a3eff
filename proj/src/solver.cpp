#include "oneside/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oneside {

ParabolicProblem viscous_conservation_law(const Flux& f, double eps,
                                          double background) {
    if (!(eps >= 0.0)) throw std::invalid_argument("eps must be >= 0");
    if (background < 0.0) throw std::invalid_argument("background must be >= 0");
    ParabolicProblem p;
    auto fp = f.deriv;
    p.sigma = [fp, eps](double, double z, double pp, double q) {
        return -fp(z) * pp + eps * q;
    };
    p.dsigma_dp = [fp](double, double z, double, double) { return -fp(z); };
    p.dsigma_dq = [eps](double, double, double, double) { return eps; };
    p.eps = eps;
    p.label = "claw:" + f.label;
    p.background = background;
    return p;
}

ParabolicProblem pme_problem(double gamma, double eps, double z_floor) {
    if (!(gamma > 0.0) || gamma == 1.0)
        throw std::invalid_argument("pme needs gamma > 0, gamma != 1");
    ParabolicProblem p;
    p.sigma = [gamma, eps, z_floor](double, double z, double pp, double q) {
        double zf = std::max(z, z_floor);
        return gamma * (gamma - 1.0) * std::pow(zf, gamma - 2.0) * pp * pp +
               (gamma * std::pow(zf, gamma - 1.0) + eps) * q;
    };
    p.dsigma_dp = [gamma, z_floor](double, double z, double pp, double) {
        double zf = std::max(z, z_floor);
        return 2.0 * gamma * (gamma - 1.0) * std::pow(zf, gamma - 2.0) * pp;
    };
    p.dsigma_dq = [gamma, eps, z_floor](double, double z, double, double) {
        double zf = std::max(z, z_floor);
        return gamma * std::pow(zf, gamma - 1.0) + eps;
    };
    p.eps = eps;
    p.label = "pme:gamma=" + std::to_string(gamma);
    return p;
}

ParabolicProblem heat_problem(double eps) {
    ParabolicProblem p;
    p.sigma = [eps](double, double, double, double q) { return (1.0 + eps) * q; };
    p.dsigma_dp = [](double, double, double, double) { return 0.0; };
    p.dsigma_dq = [eps](double, double, double, double) { return 1.0 + eps; };
    p.eps = eps;
    p.label = "heat";
    return p;
}

void verify_parabolicity(const ParabolicProblem& p, double t_max, double z_max,
                         double p_max, double q_max, double upper_bound) {
    double hq = 1e-6 * (1.0 + q_max);
    for (int it = 0; it <= 4; ++it)
        for (int iz = 0; iz <= 4; ++iz)
            for (int ip = -2; ip <= 2; ++ip)
                for (int iq = -2; iq <= 2; ++iq) {
                    double t = t_max * it / 4.0 + 1e-9;
                    double z = z_max * iz / 4.0;
                    double pp = p_max * ip / 2.0;
                    double q = q_max * iq / 2.0;
                    double d = (p.sigma(t, z, pp, q + hq) -
                                p.sigma(t, z, pp, q - hq)) /
                               (2.0 * hq);
                    if (d < p.eps - 1e-6 * (1.0 + std::abs(d)))
                        throw std::runtime_error(
                            p.label + ": dsigma/dq below eps floor");
                    if (d > upper_bound)
                        throw std::runtime_error(
                            p.label + ": dsigma/dq above stated bound");
                }
}

namespace {

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

SolverConfig parse_solver_config(const std::string& text) {
    SolverConfig cfg;
    std::istringstream is(text);
    std::string line;
    std::vector<std::string> errors;
    while (std::getline(is, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back("not key=value: " + t);
            continue;
        }
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        try {
            if (key == "grid.n")
                cfg.grid_n = std::stoi(val);
            else if (key == "grid.radius")
                cfg.grid_radius = std::stod(val);
            else if (key == "cfl")
                cfg.cfl = std::stod(val);
            else if (key == "eps_list")
                cfg.eps_list = parse_list(val);
            else if (key == "bump_width")
                cfg.bump_width = std::stod(val);
            else if (key == "z_floor")
                cfg.z_floor = std::stod(val);
            else if (key == "t_out")
                cfg.t_out = parse_list(val);
            else if (key == "workers")
                cfg.workers = std::stoi(val);
            else
                errors.push_back("unknown key: " + key);
        } catch (const std::exception&) {
            errors.push_back("bad value for key " + key + ": " + val);
        }
    }
    if (!errors.empty()) {
        std::string msg = "solver config errors:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
    return cfg;
}

SolverConfig load_solver_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_solver_config(os.str());
}

Trajectory solve(const ParabolicProblem& p, const GridFunction1D& u0,
                 const std::vector<double>& t_out, const SolverConfig& cfg) {
    if (t_out.empty() || t_out.front() <= 0.0)
        throw std::invalid_argument("t_out must start after t=0");
    for (size_t i = 0; i + 1 < t_out.size(); ++i)
        if (!(t_out[i] < t_out[i + 1]))
            throw std::invalid_argument("t_out must be increasing");

    const Grid1D& grid = u0.grid;
    const int n = grid.n;
    const double dx = grid.dx();
    const double c = p.background;

    std::vector<double> u = u0.values;
    std::vector<double> du(n + 1, 0.0);
    u.front() = c;
    u.back() = c;

    Trajectory traj;
    traj.problem = p;
    traj.config = cfg;

    double t = 0.0;
    size_t next_out = 0;
    const double tiny = 1e-300;
    while (next_out < t_out.size()) {
        double max_sp = 0.0, max_sq = 0.0, max_u = 0.0;
        double min_sq = 1e30;
        for (int i = 1; i < n; ++i) {
            double pp = (u[i + 1] - u[i - 1]) / (2.0 * dx);
            double q = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
            du[i] = p.sigma(t, u[i], pp, q);
            max_sp = std::max(max_sp, std::abs(p.dsigma_dp(t, u[i], pp, q)));
            double sq = p.dsigma_dq(t, u[i], pp, q);
            max_sq = std::max(max_sq, sq);
            min_sq = std::min(min_sq, sq);
            max_u = std::max(max_u, std::abs(u[i]));
        }
        double dt_adv = max_sp > tiny ? dx / max_sp : 1e30;
        double dt_diff = max_sq > tiny ? dx * dx / (2.0 * max_sq) : 1e30;
        // centered advection under forward Euler is von Neumann stable only
        // when dt <= 2 sigma_q / sigma_p^2; binding at large cell Peclet
        double dt_mix = max_sp > tiny && min_sq < 1e30
                            ? 2.0 * min_sq / (max_sp * max_sp)
                            : 1e30;
        double dt = cfg.cfl * std::min({dt_adv, dt_diff, dt_mix});
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw std::runtime_error(p.label + ": CFL-unresolvable step at t=" +
                                     std::to_string(t));
        if (t + dt >= t_out[next_out]) dt = t_out[next_out] - t;
        for (int i = 1; i < n; ++i) u[i] += dt * du[i];
        t += dt;
        ++traj.steps_taken;
        if (traj.steps_taken % 64 == 0) {
            for (int i = 1; i < n; ++i)
                if (!std::isfinite(u[i]))
                    throw std::runtime_error(p.label + ": NaN at t=" +
                                             std::to_string(t));
        }
        if (t >= t_out[next_out]) {
            for (double v : u)
                if (!std::isfinite(v))
                    throw std::runtime_error(p.label + ": NaN at output t=" +
                                             std::to_string(t));
            // boundary contamination: interior dynamics must not have reached
            // the pinned ends
            double thresh = 1e-8 * (1.0 + max_u);
            if (std::abs(u[1] - c) > thresh || std::abs(u[n - 1] - c) > thresh)
                throw std::runtime_error(
                    p.label + ": boundary contamination at t=" +
                    std::to_string(t) + " (enlarge domain)");
            traj.frames.push_back(make_grid_function(grid, u, t));
            ++next_out;
        }
    }
    return traj;
}

ContinuationResult viscosity_continuation(const ProblemFamily& family,
                                          const GridFunction1D& u0,
                                          const std::vector<double>& eps_list,
                                          double t, const SolverConfig& cfg) {
    if (eps_list.size() < 4)
        throw std::invalid_argument("viscosity continuation needs >= 4 eps values");
    for (size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw std::invalid_argument("eps_list must be strictly decreasing");

    ContinuationResult res{GridFunction1D{}, {}, true};
    GridFunction1D prev;
    for (size_t k = 0; k < eps_list.size(); ++k) {
        Trajectory tr = solve(family(eps_list[k]), u0, {t}, cfg);
        GridFunction1D frame = std::move(tr.frames.front());
        if (k > 0) res.cauchy_gaps.push_back(l1_distance(frame, prev));
        prev = std::move(frame);
    }
    for (size_t i = 0; i + 1 < res.cauchy_gaps.size(); ++i)
        if (res.cauchy_gaps[i] > 0.0 &&
            res.cauchy_gaps[i + 1] / res.cauchy_gaps[i] > 0.9)
            res.cauchy = false;
    res.finest = std::move(prev);
    return res;
}

GridFunction1D fundamental_numeric(const ProblemFamily& family, Mass m,
                                   double x0, double c, double t,
                                   const SolverConfig& cfg) {
    if (c < 0.0) throw std::invalid_argument("background must be >= 0");
    Grid1D grid = make_uniform_grid(x0 - cfg.grid_radius, x0 + cfg.grid_radius,
                                    cfg.grid_n);
    double w = cfg.bump_width > 0.0
                   ? cfg.bump_width
                   : std::max(20.0 * grid.dx(), 0.02 * std::sqrt(t));
    GridFunction1D u0 = approximate_delta(m, x0, w, grid);
    for (double& v : u0.values) v += c;
    u0.values.front() = c;
    u0.values.back() = c;
    ProblemFamily with_background = [&family, c](double eps) {
        ParabolicProblem p = family(eps);
        p.background = c;
        return p;
    };
    return viscosity_continuation(with_background, u0, cfg.eps_list, t, cfg)
        .finest;
}

}  // namespace oneside
