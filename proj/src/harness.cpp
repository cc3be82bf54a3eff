#include "oneside/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "oneside/checks.hpp"
#include "oneside/families.hpp"
#include "oneside/flux.hpp"
#include "oneside/fundamental.hpp"
#include "oneside/heat_nd.hpp"
#include "oneside/levelset.hpp"
#include "oneside/solver.hpp"

namespace oneside {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void add_check(RunReport& rep, const std::string& name, bool holds,
               const std::string& detail) {
    rep.checks.push_back({name, holds, detail});
}

// order-deterministic index fan-out
void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    };
    std::vector<std::thread> pool;
    int count = std::min(workers, n);
    pool.reserve(count);
    for (int w = 0; w < count; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
}

SolverConfig solver_cfg(const Scenario& s, int def_n, double def_radius,
                        std::vector<double> def_eps) {
    SolverConfig cfg;
    cfg.grid_n = s.get_int("solver.n", def_n);
    cfg.grid_radius = s.get("solver.radius", def_radius);
    cfg.cfl = s.get("solver.cfl", 0.4);
    cfg.eps_list = s.get_list("solver.eps_list", def_eps);
    cfg.bump_width = s.get("solver.bump_width", 0.0);
    cfg.z_floor = s.get("solver.z_floor", 1e-10);
    cfg.workers = s.get_int("workers", 1);
    return cfg;
}

double delta_width(const SolverConfig& cfg, const Grid1D& grid, double t) {
    return cfg.bump_width > 0.0
               ? cfg.bump_width
               : std::max(20.0 * grid.dx(), 0.02 * std::sqrt(t));
}

GridFunction1D single_eps_fundamental(const ParabolicProblem& prob, Mass m,
                                      double x0, double c, double t,
                                      const Grid1D& grid,
                                      const SolverConfig& cfg, double width) {
    GridFunction1D u0 = approximate_delta(m, x0, width, grid);
    for (double& v : u0.values) v += c;
    u0.values.front() = c;
    u0.values.back() = c;
    return solve(prob, u0, {t}, cfg).frames.front();
}

std::string csv_path(RunReport& rep, const std::string& dir,
                     const std::string& file) {
    std::string path = dir + "/" + file;
    rep.artifacts.push_back(path);
    return path;
}

// ---------------------------------------------------------------- pipelines

void run_nwave_oracle(const Scenario& s, RunReport& rep,
                      const std::string& dir) {
    Flux f = flux_by_label(s.get_str("flux", "burgers"));
    double m = s.get("m", 1.0), t = s.get("t", 1.0);
    SolverConfig cfg =
        solver_cfg(s, 4000, 5.0, {1e-1, 3e-2, 1e-2, 3e-3, 1e-3});
    Grid1D grid =
        make_uniform_grid(-cfg.grid_radius, cfg.grid_radius, cfg.grid_n);

    // a delta bump of width w carries a virtual-origin offset ~0.6 w, so the
    // L1 target needs w near the two-cell floor
    if (cfg.bump_width <= 0.0) cfg.bump_width = 2.0 * grid.dx();
    GridFunction1D u0 =
        approximate_delta(Mass(m), 0.0, delta_width(cfg, grid, t), grid);
    ProblemFamily fam = [&f](double eps) {
        return viscous_conservation_law(f, eps);
    };
    ContinuationResult cont =
        viscosity_continuation(fam, u0, cfg.eps_list, t, cfg);
    GridFunction1D num = cont.finest;
    GridFunction1D exact = nwave(f, Mass(m), t, grid);

    double l1 = l1_distance(num, exact);
    add_check(rep, "l1_vs_closed_form", l1 <= s.get("tol.l1", 2e-2),
              "L1=" + fmt(l1));

    double a = nwave_support_edge(f, Mass(m), t);
    auto supp = support_of(num, 1e-3 * num.max_value());
    double edge = supp ? supp->second : 0.0;
    add_check(rep, "support_edge",
              supp && std::abs(edge - a) <=
                          s.get("tol.edge_cells", 2.0) * grid.dx(),
              "edge=" + fmt(edge) + " exact=" + fmt(a));
    add_check(rep, "continuation_cauchy", cont.cauchy,
              "gaps decreasing across eps");

    write_csv(num, csv_path(rep, dir, "numeric.csv"));
    write_csv(exact, csv_path(rep, dir, "exact.csv"));
    rep.overlays.push_back({t, m, 0.0, 0.0, num, exact});
}

void run_oleinik_equality(const Scenario& s, RunReport& rep,
                          const std::string& dir) {
    Flux f = flux_by_label(s.get_str("flux", "burgers"));
    double m = s.get("m", 1.0), t = s.get("t", 1.0);
    Grid1D grid = make_uniform_grid(s.get("grid.min", -1.0),
                                    s.get("grid.max", 3.0),
                                    s.get_int("grid.n", 2000));
    GridFunction1D u = nwave(f, Mass(m), t, grid);
    OleinikVerdict v = oleinik_sup(u, f, t);
    double err = std::abs(v.sup - 1.0 / t);
    add_check(rep, "sup_equals_inverse_t", err <= s.get("tol", 1e-8),
              "sup=" + fmt(v.sup) + " target=" + fmt(1.0 / t));
    write_csv(u, csv_path(rep, dir, "nwave.csv"));
}

void run_equivalence_oleinik(const Scenario& s, RunReport& rep,
                             const std::string& dir) {
    int count = s.get_int("family.count", 50);
    std::vector<double> t_list = s.get_list("t_list", {0.5, 1.0, 2.0});
    Grid1D grid = make_uniform_grid(s.get("grid.min", -8.0),
                                    s.get("grid.max", 8.0),
                                    s.get_int("grid.n", 1600));
    SweepSpec base;
    base.tol = s.get("sweep.tol", 1e-6);

    auto fluxes = convex_flux_family(count, s.seed);
    int agree = 0, total = 0, expected_ok = 0, witness_checked = 0,
        witness_ok = 0;
    std::string first_fail;
    bool overlay_done = false;
    for (double t : t_list)
        for (int k = 0; k < count; ++k) {
            GridFunction1D u =
                convex_family_profile(fluxes[k], k, t, grid, s.seed);
            EquivalenceResult r = equivalence_oleinik(u, fluxes[k], t, base);
            ++total;
            if (r.agree) ++agree;
            else if (first_fail.empty())
                first_fail = "member " + std::to_string(k) + " t=" + fmt(t);
            if (r.inequality_holds == convex_family_member_holds(k))
                ++expected_ok;
            if (!r.inequality_holds && r.formula_valid) {
                ++witness_checked;
                double d = std::abs(r.witness_x0 - r.formula_x0);
                if (!r.sweep_holds &&
                    d <= 0.1 * std::max(1.0, std::abs(r.formula_x0)))
                    ++witness_ok;
                if (!overlay_done && !r.sweep_holds) {
                    auto provider = nwave_rho_provider(fluxes[k], grid, t,
                                                       /*fast=*/false);
                    rep.overlays.push_back(
                        {t, r.sweep.m, r.sweep.x0, 0.0, u,
                         provider(r.sweep.m, r.sweep.x0, 0.0)});
                    overlay_done = true;
                }
            }
        }
    add_check(rep, "agreement", agree == total,
              std::to_string(agree) + "/" + std::to_string(total) +
                  (first_fail.empty() ? "" : " first disagreement: " +
                                                 first_fail));
    add_check(rep, "expected_verdicts", expected_ok == total,
              std::to_string(expected_ok) + "/" + std::to_string(total));
    add_check(rep, "witness_near_formula", witness_ok == witness_checked,
              std::to_string(witness_ok) + "/" +
                  std::to_string(witness_checked));
    if (!rep.overlays.empty())
        write_csv(rep.overlays.front().u, csv_path(rep, dir, "witness_u.csv"));
}

void run_equivalence_ab(const Scenario& s, RunReport& rep,
                        const std::string& dir) {
    double t = s.get("t", 1.0);

    // closed-form equality case, gamma = 2, m = 1
    {
        double gamma = 2.0;
        double c_m = barenblatt_coefficient(gamma, Mass(1.0), t);
        double alpha = (1.0 - gamma) / (gamma + 1.0);
        double k = (gamma - 1.0) / (2.0 * gamma * (gamma + 1.0));
        double edge = std::sqrt(c_m * std::pow(t, alpha) * t / k);
        Grid1D fine = make_uniform_grid(-edge, edge, 20000);
        GridFunction1D bb = barenblatt(gamma, Mass(1.0), t, fine);
        double mass = mass_of(bb);
        add_check(rep, "barenblatt_mass", std::abs(mass - 1.0) <= 1e-8,
                  "mass=" + fmt(mass));
        Grid1D grid = make_uniform_grid(-4.0, 4.0, 2000);
        GridFunction1D bb2 = barenblatt(gamma, Mass(1.0), t, grid);
        AbVerdict ab = ab_min(bb2, gamma, t);
        double target = -1.0 / (t * (gamma + 1.0));
        add_check(rep, "pressure_curvature_equality",
                  std::abs(ab.min - target) <= 1e-6,
                  "min=" + fmt(ab.min) + " target=" + fmt(target));
        write_csv(bb2, csv_path(rep, dir, "barenblatt.csv"));
    }

    int count = s.get_int("family.count", 20);
    Grid1D grid = make_uniform_grid(s.get("grid.min", -8.0),
                                    s.get("grid.max", 8.0),
                                    s.get_int("grid.n", 1200));
    SweepSpec base;
    base.tol = s.get("sweep.tol", 1e-6);
    auto family = pme_family(count);
    int agree = 0, expected_ok = 0;
    std::string first_fail;
    for (const auto& member : family) {
        GridFunction1D u = pme_family_profile(member, t, grid, s.seed);
        EquivalenceResult r = equivalence_ab(u, member.gamma, t, base);
        if (r.agree) ++agree;
        else if (first_fail.empty())
            first_fail = "member " + std::to_string(member.index) +
                         " gamma=" + fmt(member.gamma);
        if (r.inequality_holds == pme_family_member_holds(member))
            ++expected_ok;
        if (!r.sweep_holds && rep.overlays.empty()) {
            auto provider = barenblatt_rho_provider(member.gamma, grid, t);
            rep.overlays.push_back({t, r.sweep.m, r.sweep.x0, 0.0, u,
                                    provider(r.sweep.m, r.sweep.x0, 0.0)});
        }
    }
    add_check(rep, "agreement", agree == count,
              std::to_string(agree) + "/" + std::to_string(count) +
                  (first_fail.empty() ? "" : " first disagreement: " +
                                                 first_fail));
    add_check(rep, "expected_verdicts", expected_ok == count,
              std::to_string(expected_ok) + "/" + std::to_string(count));
}

void run_lap_number(const Scenario& s, RunReport& rep, const std::string&) {
    int pairs = s.get_int("pairs", 20);
    // the heat instance has unbounded propagation speed: the Gaussian tail
    // from data supported in |x| <= 2 must decay below the 1e-8 boundary
    // threshold by t = 1, which needs |x| beyond ~2 + sqrt(4 ln 1e8)
    Grid1D grid = make_uniform_grid(-s.get("grid.radius", 11.0),
                                    s.get("grid.radius", 11.0),
                                    s.get_int("grid.n", 800));
    std::vector<double> t_out = s.get_list(
        "t_out", {0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.75, 1.0});
    SolverConfig cfg = solver_cfg(s, grid.n, grid.x_max, {1e-2});

    struct Instance {
        std::string label;
        ParabolicProblem prob;
    };
    std::vector<Instance> instances = {
        {"heat", heat_problem(s.get("eps.heat", 0.0))},
        {"burgers", viscous_conservation_law(flux_by_label("burgers"),
                                             s.get("eps.claw", 1e-2))},
        {"pme", pme_problem(2.0, s.get("eps.pme", 1e-2), cfg.z_floor)},
    };

    std::atomic<int> violations{0};
    std::vector<std::string> details(instances.size() * pairs);
    for (size_t inst = 0; inst < instances.size(); ++inst) {
        parallel_for(pairs, cfg.workers, [&, inst](int p) {
            std::uint64_t base = s.seed * 7919ULL + inst * 1000ULL + p * 2ULL;
            GridFunction1D u0 = random_bumps(grid, base, 3, 0.0, 2.0);
            GridFunction1D v0 = random_bumps(grid, base + 1, 3, 0.0, 2.0);
            Trajectory tu = solve(instances[inst].prob, u0, t_out, cfg);
            Trajectory tv = solve(instances[inst].prob, v0, t_out, cfg);
            int prev = -1;
            for (size_t fr = 0; fr < tu.frames.size(); ++fr) {
                GridFunction1D e = tu.frames[fr];
                for (int i = 0; i < e.size(); ++i) e[i] -= tv.frames[fr][i];
                double tol = std::max(1e-6 * e.max_abs(), 1e-300);
                int cnt = sign_change_count(sign_pattern(e, tol));
                if (prev >= 0 && cnt > prev) {
                    ++violations;
                    details[inst * pairs + p] =
                        instances[inst].label + " pair " + std::to_string(p) +
                        " t=" + fmt(e.time_tag) + " " +
                        std::to_string(prev) + "->" + std::to_string(cnt);
                }
                prev = cnt;
            }
        });
    }
    std::string detail;
    for (const auto& d : details)
        if (!d.empty() && detail.empty()) detail = d;
    add_check(rep, "sign_changes_nonincreasing", violations == 0,
              violations == 0 ? "0 violations" : detail);
}

void run_headline(const Scenario& s, RunReport& rep, const std::string& dir) {
    double t = s.get("t", 0.5);
    // sized for the heat instance: Gaussian tails of bumps seeded out to
    // |x0| = 2 must clear the 1e-8 boundary threshold at the final time
    Grid1D grid = make_uniform_grid(-s.get("grid.radius", 9.0),
                                    s.get("grid.radius", 9.0),
                                    s.get_int("grid.n", 900));
    SolverConfig cfg =
        solver_cfg(s, grid.n, grid.x_max, {8e-2, 4e-2, 2e-2, 1e-2});
    double eps_fine = cfg.eps_list.back();
    std::vector<double> m_list = s.get_list("m_list", {0.5, 2.0});
    std::vector<double> x0_list =
        s.get_list("x0_list", {-2.0, -1.0, 0.0, 1.0, 2.0});
    double tol_rel = s.get("sweep.tol", 1e-3);

    Flux burgers = flux_by_label("burgers");
    struct Instance {
        std::string label;
        ProblemFamily family;
        int data_count;
    };
    std::vector<Instance> instances = {
        {"burgers",
         [burgers](double eps) {
             return viscous_conservation_law(burgers, eps);
         },
         3},
        {"pme", [&](double eps) { return pme_problem(2.0, eps, cfg.z_floor); },
         2},
        {"heat", [](double eps) { return heat_problem(eps); }, 1},
    };

    int violations = 0, tested = 0;
    std::string detail;
    double width = delta_width(cfg, grid, t);
    for (size_t inst = 0; inst < instances.size(); ++inst) {
        const auto& in = instances[inst];
        // matching-eps fundamental frames, shared across the instance's data
        std::vector<GridFunction1D> rhos;
        for (double m : m_list)
            for (double x0 : x0_list)
                rhos.push_back(single_eps_fundamental(
                    in.family(eps_fine), Mass(m), x0, 0.0, t, grid, cfg,
                    width));
        for (int j = 0; j < in.data_count; ++j) {
            GridFunction1D u0 = random_bumps(
                grid, s.seed * 4049ULL + inst * 101ULL + j, 3, 0.0, 2.0);
            GridFunction1D u =
                viscosity_continuation(in.family, u0, cfg.eps_list, t, cfg)
                    .finest;
            size_t ri = 0;
            for (double m : m_list)
                for (double x0 : x0_list) {
                    GridFunction1D e = rhos[ri++];
                    for (int i = 0; i < e.size(); ++i) e[i] -= u[i];
                    double tol = std::max(tol_rel * e.max_abs(), 1e-300);
                    auto r = is_connectable(sign_pattern(e, tol));
                    ++tested;
                    if (!r.connectable) {
                        ++violations;
                        if (detail.empty())
                            detail = in.label + " data " + std::to_string(j) +
                                     " m=" + fmt(m) + " x0=" + fmt(x0);
                        if (rep.overlays.empty())
                            rep.overlays.push_back(
                                {t, m, x0, 0.0, u, rhos[ri - 1]});
                    }
                }
        }
    }
    add_check(rep, "connectability", violations == 0,
              violations == 0
                  ? std::to_string(tested) + " sweep points, 0 violations"
                  : detail);
    (void)dir;
}

void run_no_wrinkles(const Scenario& s, RunReport& rep,
                     const std::string& dir) {
    double t = s.get("t", 1.0);
    struct Named {
        std::string label;
        GridFunction1D frame;
        double tol_rel;
    };
    std::vector<Named> frames;

    Grid1D g1 = make_uniform_grid(-1.0, 4.0, 1500);
    frames.push_back(
        {"nwave_burgers", nwave(flux_by_label("burgers"), Mass(1.0), t, g1),
         1e-6});
    frames.push_back(
        {"nwave_cubic", nwave(flux_by_label("cubic"), Mass(1.0), t, g1),
         1e-6});
    Grid1D g2 = make_uniform_grid(-5.0, 5.0, 1500);
    frames.push_back(
        {"barenblatt_pme", barenblatt(2.0, Mass(1.0), t, g2), 1e-6});
    frames.push_back(
        {"barenblatt_fde",
         sample(g2,
                [&](double x) {
                    return barenblatt_value(
                        0.5, barenblatt_coefficient(0.5, Mass(1.0), t), x, t);
                },
                t),
         1e-6});
    frames.push_back(
        {"heat_kernel",
         sample(g2,
                [&](double x) {
                    return heat_kernel(Mass(1.0), t, 1,
                                       std::span<const double>(&x, 1));
                },
                t),
         1e-6});

    SolverConfig cfg = solver_cfg(s, 800, 6.0, {1e-2});
    Grid1D gn = make_uniform_grid(-6.0, 6.0, cfg.grid_n);
    // wide seed bump: keeps the profile below the range where the quartic
    // f' is large, which the centered scheme needs at eps = 1e-2
    double width = std::max(delta_width(cfg, gn, t), s.get("bump_width", 0.9));
    double tol_num = s.get("tol.numeric", 1e-3);
    frames.push_back(
        {"numeric_quartic",
         single_eps_fundamental(
             viscous_conservation_law(flux_by_label("quartic"), 1e-2),
             Mass(1.0), 0.0, 0.0, t, gn, cfg, width),
         tol_num});
    frames.push_back(
        {"numeric_burgers",
         single_eps_fundamental(
             viscous_conservation_law(flux_by_label("burgers"), 1e-2),
             Mass(1.0), 0.0, 0.0, t, gn, cfg, width),
         tol_num});

    bool all = true;
    std::string detail;
    for (const auto& nf : frames) {
        int changes = monotonicity_changes(
            nf.frame, nf.tol_rel * nf.frame.max_abs());
        if (changes != 1) {
            all = false;
            if (detail.empty())
                detail = nf.label + " changes=" + std::to_string(changes);
        }
        write_csv(nf.frame, csv_path(rep, dir, nf.label + ".csv"));
    }
    add_check(rep, "single_crest", all,
              all ? std::to_string(frames.size()) + " frames" : detail);
}

void run_counterexample(const Scenario& s, RunReport& rep,
                        const std::string& dir) {
    Flux f = flux_by_label(s.get_str("flux", "quartic"));
    double t = s.get("t", 1.0);
    double ul = s.get("jump.left", (2.0 + std::sqrt(7.0)) / 2.0);
    double ur = s.get("jump.right", 0.5);
    Grid1D grid = make_uniform_grid(-s.get("grid.radius", 6.0),
                                    s.get("grid.radius", 6.0),
                                    s.get_int("grid.n", 3000));
    GridFunction1D u_jump =
        sample(grid, [&](double x) { return x < 0.0 ? ul : ur; }, t);

    auto jumps = admissibility_verdict(u_jump, f);
    bool inadmissible =
        jumps.size() == 1 && !jumps.front().admissible;
    add_check(rep, "jump_chord_inadmissible", inadmissible,
              jumps.empty() ? "no jump detected"
                            : "left=" + fmt(jumps.front().u_left) +
                                  " right=" + fmt(jumps.front().u_right));

    SolverConfig cfg = solver_cfg(s, grid.n, grid.x_max, {1e-2});
    double eps = cfg.eps_list.back();
    double c_bg = s.get("background", 0.5);
    std::vector<double> m_list = s.get_list("m_list", {1, 2, 3, 4, 5, 6});
    SweepSpec spec;
    spec.t = t;
    spec.tol = s.get("sweep.tol", 1e-3);
    spec.m_values = m_list;
    spec.x0_values = SweepSpec::spread(s.get("x0.min", -4.0),
                                       s.get("x0.max", 4.0),
                                       s.get_int("x0.count", 21));

    // numeric fundamental frames, cached per (m, c), shifted by interpolation
    auto cache = std::make_shared<std::map<std::pair<double, double>,
                                           GridFunction1D>>();
    // one shared seed width for the whole m-family: equal widths keep the
    // family pointwise ordered (comparison principle), so member-vs-member
    // differences stay one-signed up to tolerance; sized for the largest
    // mass so heights stay where the quartic f' is moderate and the
    // centered scheme resolves the cell Peclet number
    double m_top = *std::max_element(m_list.begin(), m_list.end());
    double width = std::max(delta_width(cfg, grid, t),
                            s.get("bump_scale", 0.8) * m_top);
    RhoProvider provider = [&, cache](double m, double x0, double c) {
        auto it = cache->find({m, c});
        if (it == cache->end()) {
            GridFunction1D frame = single_eps_fundamental(
                viscous_conservation_law(f, eps, c), Mass(m), 0.0, c, t, grid,
                cfg, width);
            it = cache->emplace(std::make_pair(m, c), std::move(frame)).first;
        }
        const GridFunction1D& base = it->second;
        return sample(
            grid, [&](double x) { return base.interp(x - x0); }, t);
    };

    SweepSpec spec0 = spec;
    spec0.c_values = {0.0};
    SweepVerdict v0 = connectability_sweep(u_jump, provider, spec0);
    add_check(rep, "c0_sweep_holds", v0.holds,
              v0.holds ? "no witness at c=0"
                       : "unexpected witness m=" + fmt(v0.m) +
                             " x0=" + fmt(v0.x0));

    SweepSpec specc = spec;
    specc.c_values = {c_bg};
    SweepVerdict vc = connectability_sweep(u_jump, provider, specc);
    add_check(rep, "background_witness_found", !vc.holds,
              !vc.holds ? "witness m=" + fmt(vc.m) + " x0=" + fmt(vc.x0) +
                              " c=" + fmt(vc.c)
                        : "no witness found at c=" + fmt(c_bg));
    if (!vc.holds)
        rep.overlays.push_back(
            {t, vc.m, vc.x0, vc.c, u_jump, provider(vc.m, vc.x0, vc.c)});

    // the true entropy fundamental frame must pass the same background sweep
    GridFunction1D u_entropy = provider(s.get("entropy.m", 1.0), 0.0, c_bg);
    SweepVerdict ve = connectability_sweep(u_entropy, provider, specc);
    add_check(rep, "entropy_frame_passes", ve.holds,
              ve.holds ? "no witness"
                       : "witness m=" + fmt(ve.m) + " x0=" + fmt(ve.x0));

    write_csv(u_jump, csv_path(rep, dir, "steady_jump.csv"));
    write_csv(u_entropy, csv_path(rep, dir, "entropy_frame.csv"));
}

void run_tv_bound(const Scenario& s, RunReport& rep, const std::string&) {
    Flux f = flux_by_label(s.get_str("flux", "burgers"));
    Grid1D grid = make_uniform_grid(-2.0, s.get("grid.max", 10.0),
                                    s.get_int("grid.n", 3000));
    std::vector<double> t_list = s.get_list("t_list", {0.5, 1.0, 2.0});

    bool ratio_ok = true;
    std::string detail;
    for (double t : t_list) {
        SweepSpec spec;
        spec.t = t;
        spec.m_values = s.get_list("m_list", {0.5, 1.0, 2.0, 4.0});
        spec.c_values = {0.0};
        spec.x0_values = {0.0};
        TvRatioResult r =
            tv_ratio_constant(nwave_rho_provider(f, grid, t, true), spec);
        double rel = std::abs(r.ratio * t / 2.0 - 1.0);
        if (rel > s.get("tol.ratio", 5e-2)) {
            ratio_ok = false;
            if (detail.empty())
                detail = "t=" + fmt(t) + " ratio=" + fmt(r.ratio);
        }
        if (detail.empty()) detail = "C(t)=2/t confirmed";
    }
    add_check(rep, "ratio_matches_2_over_t", ratio_ok, detail);

    // the bound holds along viscous trajectories from compact data
    Grid1D sg = make_uniform_grid(-s.get("grid.radius", 6.0),
                                  s.get("grid.radius", 6.0),
                                  s.get_int("solver.n", 500));
    SolverConfig cfg = solver_cfg(s, sg.n, sg.x_max, {8e-2, 4e-2, 2e-2, 1e-2});
    std::vector<double> t_out = s.get_list("t_out", {0.25, 0.5, 1.0});
    bool bound_ok = true;
    std::string bdetail;
    for (int j = 0; j < s.get_int("data.count", 2); ++j) {
        GridFunction1D u0 =
            random_bumps(sg, s.seed * 5471ULL + j, 3, 0.0, 2.0);
        Trajectory tr = solve(viscous_conservation_law(f, cfg.eps_list.back()),
                              u0, t_out, cfg);
        for (const auto& frame : tr.frames) {
            TvBoundVerdict tb = tv_bound_check(
                frame, 2.0 / frame.time_tag, std::nullopt,
                1e-3 * frame.max_value());
            if (!tb.holds) {
                bound_ok = false;
                if (bdetail.empty())
                    bdetail = "data " + std::to_string(j) + " t=" +
                              fmt(frame.time_tag) + " tv=" + fmt(tb.tv) +
                              " bound=" + fmt(tb.bound);
            }
        }
    }
    add_check(rep, "tv_bound_on_frames", bound_ok,
              bound_ok ? "all frames within bound" : bdetail);
}

void run_similarity(const Scenario& s, RunReport& rep, const std::string&) {
    double t = s.get("t", 0.5), m = s.get("m", 2.0);
    Grid1D grid = make_uniform_grid(-1.0, 4.0, s.get_int("grid.n", 2000));
    bool closed_ok = true;
    std::string detail;
    for (const std::string& label : {"burgers", "cubic"}) {
        Flux f = flux_by_label(label);
        double d = similarity_check(nwave_solution(f, Mass(m)),
                                    nwave_solution(f, Mass(1.0)), Mass(m), t,
                                    grid);
        if (d > grid.dx()) {
            closed_ok = false;
            if (detail.empty()) detail = label + " L1=" + fmt(d);
        }
    }
    add_check(rep, "closed_form_similarity", closed_ok,
              closed_ok ? "within one cell" : detail);

    // numeric nonconvex check: viscosity must be rescaled with m so both
    // frames sit at the same effective viscosity after x -> m x, t -> m t
    Flux f = flux_by_label(s.get_str("flux", "quartic"));
    double eps = s.get("eps", 1e-2);
    SolverConfig cfg = solver_cfg(s, 800, 5.0, {eps});
    Grid1D g1 = make_uniform_grid(-5.0, 5.0, 800);
    // keep the seed bump below the range where f' is large: the centered
    // scheme needs the cell Peclet number |f'| dx / eps resolved
    double width = std::max(delta_width(cfg, g1, t), s.get("bump_width", 0.85));
    GridFunction1D rho1 = single_eps_fundamental(
        viscous_conservation_law(f, eps), Mass(1.0), 0.0, 0.0, t, g1, cfg,
        width);
    Grid1D gm = make_uniform_grid(-5.0 * m, 5.0 * m,
                                  static_cast<int>(800 * m));
    GridFunction1D rhom = single_eps_fundamental(
        viscous_conservation_law(f, m * eps), Mass(m), 0.0, 0.0, m * t, gm,
        cfg, width * m);
    double disc = 0.0;
    for (int i = 0; i < g1.num_nodes(); ++i) {
        double d = std::abs(rhom.interp(m * g1.node(i)) - rho1[i]);
        disc += (i == 0 || i == g1.n) ? 0.5 * d : d;
    }
    disc *= g1.dx();
    add_check(rep, "numeric_similarity", disc <= s.get("tol.numeric", 3e-2),
              "L1=" + fmt(disc));
    rep.overlays.push_back({t, m, 0.0, 0.0, rho1, rhom});
}

void run_heat_2d(const Scenario& s, RunReport& rep, const std::string&) {
    double radius = s.get("grid.radius", 10.0);
    int n = s.get_int("grid.n", 255);
    std::vector<Grid1D> axes = {Grid1D{-radius, radius, n},
                                Grid1D{-radius, radius, n}};
    std::vector<double> t_list = s.get_list("t_list", {0.25, 1.0});
    int count = s.get_int("data.count", 10);
    int lines = s.get_int("lines", 20);
    double conv_tol = s.get("tol.convexity", 1e-8);

    std::vector<double> m_list = s.get_list("m_list", {0.5, 0.75, 1, 1.5, 2});
    std::vector<double> off = s.get_list("x0_offsets", {-1.0, 0.0, 1.0});

    bool conv_ok = true, level_ok = true;
    double worst = 0.0;
    std::string cdetail, ldetail;
    GridFunctionND first_u;
    for (int k = 0; k < count; ++k) {
        GridFunctionND u0 =
            random_bumps_2d(axes, s.seed * 6007ULL + k, 4, 2.0);
        for (double t : t_list) {
            GridFunctionND u = heat_convolve(u0, t);
            if (k == 0 && t == t_list.back()) first_u = u;
            for (double ox : off) {
                PsiField psi = psi_field(u, Mass(1.0), {ox, -ox}, t);
                NdVerdict v =
                    convexity_check(psi, lines, conv_tol, s.seed + k);
                worst = std::min(worst, v.worst);
                if (!v.holds) {
                    conv_ok = false;
                    if (cdetail.empty())
                        cdetail = "u0 " + std::to_string(k) + " t=" + fmt(t) +
                                  " worst=" + fmt(v.worst);
                }
            }
            for (double m : m_list)
                for (double ox : off)
                    for (double oy : off) {
                        double tol = 1e-6 * m / (4.0 * std::numbers::pi * t);
                        NdVerdict v = levelset_convexity(u, Mass(m), {ox, oy},
                                                         t, tol);
                        if (!v.holds) {
                            level_ok = false;
                            if (ldetail.empty())
                                ldetail = "u0 " + std::to_string(k) + " t=" +
                                          fmt(t) + " m=" + fmt(m) + " " +
                                          v.detail;
                        }
                    }
        }
    }
    add_check(rep, "psi_convexity", conv_ok,
              conv_ok ? "worst=" + fmt(worst) : cdetail);
    add_check(rep, "levelset_convexity", level_ok,
              level_ok ? "all sampled (m,x0,t)" : ldetail);

    // negative controls
    {
        double t = t_list.back();
        PsiField psi = psi_field(first_u, Mass(1.0), {0.0, 0.0}, t);
        psi.exact_eval = nullptr;  // force the grid path so the dimple is seen
        // carve a concave dimple into the field
        int ci = axes[0].nearest_node(0.0), cj = axes[1].nearest_node(0.0);
        std::vector<int> idx = {ci, cj};
        double local = std::max(psi.psi.at(idx), 1.0);
        for (int di = -6; di <= 6; ++di)
            for (int dj = -6; dj <= 6; ++dj) {
                double r2 = (di * di + dj * dj) / 36.0;
                if (r2 > 1.0) continue;
                std::vector<int> p = {ci + di, cj + dj};
                psi.psi.at(p) += 0.8 * local * (1.0 - r2) * (1.0 - r2);
            }
        NdVerdict v = convexity_check(psi, lines, conv_tol, s.seed);
        add_check(rep, "dimple_control_fails", !v.holds,
                  "worst=" + fmt(v.worst));
    }
    {
        double t = t_list.back();
        double peak = 3.0 / (4.0 * std::numbers::pi * t);
        GridFunctionND u_ring = sample_nd(axes, [&](const std::vector<double>&
                                                        x) {
            double r2 = (x[0] * x[0] + x[1] * x[1]);
            double q = 1.0 - r2 / 1.5;
            return q > 0.0 ? peak * q * q : 0.0;
        });
        NdVerdict v = levelset_convexity(
            u_ring, Mass(1.0), {0.0, 0.0}, t,
            1e-6 / (4.0 * std::numbers::pi * t));
        add_check(rep, "ring_control_fails", !v.holds, v.detail);
    }
}

void run_steepness(const Scenario& s, RunReport& rep, const std::string&) {
    double t = s.get("t", 1.0);
    Flux burgers = flux_by_label("burgers");
    bool ok = true;
    bool saw_a = false;
    std::string detail;

    auto check_pair = [&](const std::string& label, const GridFunction1D& u,
                          const GridFunction1D& rho, double tol) {
        SteepnessReport r = steepness_classify(u, rho, t, tol);
        for (const auto& iv : r.intervals)
            if (iv.scenario == 'a') saw_a = true;
        if (r.any_violation) {
            ok = false;
            if (detail.empty()) detail = label;
        }
    };

    Grid1D g1 = make_uniform_grid(-1.0, 4.0, 1500);
    GridFunction1D u1 = nwave(burgers, Mass(1.0), t, g1);
    GridFunction1D r2 = nwave(burgers, Mass(2.0), t, g1);
    check_pair("nwave_pair", u1, r2, 1e-6 * r2.max_value());

    Grid1D g2 = make_uniform_grid(-4.0, 4.0, 1500);
    check_pair("barenblatt_pair", barenblatt(2.0, Mass(1.0), t, g2),
               barenblatt(2.0, Mass(2.0), t, g2), 1e-6);

    SolverConfig cfg = solver_cfg(s, 600, 6.0, {8e-2, 4e-2, 2e-2, 1e-2});
    Grid1D gn = make_uniform_grid(-6.0, 6.0, cfg.grid_n);
    double ts = s.get("t.numeric", 0.5);
    GridFunction1D u0 = random_bumps(gn, s.seed * 8887ULL, 3, 0.0, 2.0);
    ProblemFamily fam = [burgers](double eps) {
        return viscous_conservation_law(burgers, eps);
    };
    GridFunction1D un =
        viscosity_continuation(fam, u0, cfg.eps_list, ts, cfg).finest;
    GridFunction1D rn = single_eps_fundamental(
        viscous_conservation_law(burgers, cfg.eps_list.back()), Mass(2.0), 0.0,
        0.0, ts, gn, cfg, delta_width(cfg, gn, ts));
    {
        SteepnessReport r = steepness_classify(
            un, rn, ts, s.get("tol.numeric", 2e-2) * rn.max_value());
        if (r.any_violation) {
            ok = false;
            if (detail.empty()) detail = "numeric_pair";
        }
    }
    add_check(rep, "no_violations", ok, ok ? "all pairs clean" : detail);
    add_check(rep, "scenario_a_observed", saw_a, "");

    // synthetic too-steep control: a hat much steeper than the fundamental
    // ramp, poking through it mid-ramp; such a profile cannot be a solution
    // at time t and the crossing shows up as a forbidden scenario
    double a2 = nwave_support_edge(burgers, Mass(2.0), t);
    double hat_c = 0.5 * a2, hat_w = 0.15, hat_h = 0.5 * a2 / t + 0.35;
    GridFunction1D hat = sample(
        g1,
        [&](double x) {
            double q = 1.0 - std::abs(x - hat_c) / hat_w;
            return q > 0.0 ? hat_h * q : 0.0;
        },
        t);
    // a real violation must persist across a decade of tolerance either way
    SteepnessReport r = steepness_classify(hat, r2, t, 1e-6 * r2.max_value());
    bool robust = r.any_violation;
    for (double f : {0.1, 10.0})
        robust = robust &&
                 steepness_classify(hat, r2, t, f * 1e-6 * r2.max_value())
                     .any_violation;
    add_check(rep, "negative_control_flagged", robust,
              std::to_string(r.intervals.size()) + " intervals");
    rep.overlays.push_back({t, 2.0, 0.0, 0.0, hat, r2});
}

}  // namespace

// ------------------------------------------------------------ infrastructure

double Scenario::get(const std::string& key, double fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stod(it->second);
}

int Scenario::get_int(const std::string& key, int fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    return std::stoi(it->second);
}

std::string Scenario::get_str(const std::string& key,
                              const std::string& fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

std::vector<double> Scenario::get_list(
    const std::string& key, const std::vector<double>& fallback) const {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    std::vector<double> out;
    std::istringstream is(it->second);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!trim(tok).empty()) out.push_back(std::stod(trim(tok)));
    return out;
}

bool RunReport::all_hold() const {
    for (const auto& c : checks)
        if (!c.holds) return false;
    return true;
}

std::vector<std::string> shipped_scenario_names() {
    return {"nwave_oracle",          "oleinik_equality",
            "burgers_equivalence",   "barenblatt_ab",
            "lap_number",            "headline_connectability",
            "no_wrinkles",           "counterexample_quartic",
            "tv_bound",              "similarity",
            "heat_2d",               "steepness"};
}

Scenario shipped_scenario(const std::string& name) {
    static const std::map<std::string, std::string> kinds = {
        {"nwave_oracle", "nwave_oracle"},
        {"oleinik_equality", "oleinik_equality"},
        {"burgers_equivalence", "equivalence_oleinik"},
        {"barenblatt_ab", "equivalence_ab"},
        {"lap_number", "lap_number"},
        {"headline_connectability", "headline_connectability"},
        {"no_wrinkles", "no_wrinkles"},
        {"counterexample_quartic", "counterexample"},
        {"tv_bound", "tv_bound"},
        {"similarity", "similarity"},
        {"heat_2d", "heat_2d"},
        {"steepness", "steepness"}};
    auto it = kinds.find(name);
    if (it == kinds.end()) {
        std::string msg = "unknown scenario: " + name + " (known:";
        for (const auto& n : shipped_scenario_names()) msg += " " + n;
        throw std::invalid_argument(msg + ")");
    }
    Scenario s;
    s.name = name;
    s.kind = it->second;
    return s;
}

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    std::vector<std::string> errors;
    std::istringstream is(text);
    std::string line;
    std::map<std::string, std::string> kv;
    while (std::getline(is, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back("not key=value: " + t);
            continue;
        }
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    if (auto it = kv.find("scenario"); it != kv.end()) {
        try {
            s = shipped_scenario(it->second);
        } catch (const std::exception& e) {
            errors.push_back(e.what());
        }
        kv.erase(it);
    }
    if (auto it = kv.find("name"); it != kv.end()) {
        s.name = it->second;
        kv.erase(it);
    }
    if (auto it = kv.find("kind"); it != kv.end()) {
        s.kind = it->second;
        kv.erase(it);
    }
    if (auto it = kv.find("seed"); it != kv.end()) {
        try {
            s.seed = std::stoull(it->second);
        } catch (const std::exception&) {
            errors.push_back("bad value for key seed: " + it->second);
        }
        kv.erase(it);
    }
    for (auto& [k, v] : kv) s.params[k] = v;
    if (s.kind.empty()) errors.push_back("missing key: kind (or scenario)");
    if (s.name.empty()) s.name = s.kind;
    if (!errors.empty()) {
        std::string msg = "scenario config errors:";
        for (const auto& e : errors) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_scenario(os.str());
}

std::string run_directory() {
    if (const char* env = std::getenv("ONESIDE_RUN_DIR"); env && *env)
        return env;
    return "runs";
}

RunReport run_scenario(const Scenario& s) {
    RunReport rep;
    rep.scenario = s;
    {
        std::ostringstream echo;
        echo << "name=" << s.name << "\nkind=" << s.kind
             << "\nseed=" << s.seed << "\n";
        for (const auto& [k, v] : s.params) echo << k << "=" << v << "\n";
        rep.config_echo = echo.str();
    }
    std::string dir = run_directory() + "/" + s.name;
    std::filesystem::create_directories(dir);

    auto start = std::chrono::steady_clock::now();
    if (s.kind == "nwave_oracle")
        run_nwave_oracle(s, rep, dir);
    else if (s.kind == "oleinik_equality")
        run_oleinik_equality(s, rep, dir);
    else if (s.kind == "equivalence_oleinik")
        run_equivalence_oleinik(s, rep, dir);
    else if (s.kind == "equivalence_ab")
        run_equivalence_ab(s, rep, dir);
    else if (s.kind == "lap_number")
        run_lap_number(s, rep, dir);
    else if (s.kind == "headline_connectability")
        run_headline(s, rep, dir);
    else if (s.kind == "no_wrinkles")
        run_no_wrinkles(s, rep, dir);
    else if (s.kind == "counterexample")
        run_counterexample(s, rep, dir);
    else if (s.kind == "tv_bound")
        run_tv_bound(s, rep, dir);
    else if (s.kind == "similarity")
        run_similarity(s, rep, dir);
    else if (s.kind == "heat_2d")
        run_heat_2d(s, rep, dir);
    else if (s.kind == "steepness")
        run_steepness(s, rep, dir);
    else
        throw std::invalid_argument("unknown scenario kind: " + s.kind);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    std::ofstream report(dir + "/report.txt");
    report << "# scenario report\n" << rep.config_echo << "\n";
    for (const auto& c : rep.checks)
        report << (c.holds ? "PASS " : "FAIL ") << c.name
               << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    report << "\nwall_seconds=" << rep.wall_seconds << "\n";
    for (const auto& a : rep.artifacts) report << "artifact=" << a << "\n";
    rep.artifacts.push_back(dir + "/report.txt");
    return rep;
}

RunReport run_scenario_file(const std::string& path) {
    return run_scenario(load_scenario(path));
}

std::vector<std::string> list_scenarios() {
    std::vector<std::string> names = shipped_scenario_names();
    std::error_code ec;
    for (const auto& entry :
         std::filesystem::directory_iterator(run_directory(), ec)) {
        if (entry.path().extension() == ".cfg")
            names.push_back(entry.path().string());
    }
    return names;
}

std::vector<std::string> emit_plotdata(const RunReport& report,
                                       const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> files;
    int k = 0;
    for (const auto& ov : report.overlays) {
        std::string path = dir + "/overlay_" + std::to_string(k++) + ".csv";
        std::ofstream f(path);
        f.precision(17);
        f << "# t=" << ov.t << " m=" << ov.m << " x0=" << ov.x0
          << " c=" << ov.c << "\n";
        f << "x,u,rho,e,sign\n";
        double tol = 1e-9 * (1.0 + ov.rho.max_abs() + ov.u.max_abs());
        for (int i = 0; i < ov.u.size(); ++i) {
            double e = ov.rho.values.size() == ov.u.values.size()
                           ? ov.rho[i] - ov.u[i]
                           : ov.rho.interp(ov.u.grid.node(i)) - ov.u[i];
            int sg = e > tol ? 1 : (e < -tol ? -1 : 0);
            f << ov.u.grid.node(i) << "," << ov.u[i] << ","
              << (ov.rho.values.size() == ov.u.values.size()
                      ? ov.rho[i]
                      : ov.rho.interp(ov.u.grid.node(i)))
              << "," << e << "," << sg << "\n";
        }
        files.push_back(path);
    }
    return files;
}

int exit_code_for(const RunReport& report) {
    return report.all_hold() ? 0 : 2;
}

}  // namespace oneside
