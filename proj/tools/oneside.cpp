#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oneside/checks.hpp"
#include "oneside/flux.hpp"
#include "oneside/fundamental.hpp"
#include "oneside/harness.hpp"
#include "oneside/heat_nd.hpp"
#include "oneside/levelset.hpp"

namespace {

int report_outcome(bool holds, const std::string& line) {
    std::cout << (holds ? "HOLDS " : "VIOLATED ") << line << "\n";
    return holds ? 0 : 2;
}

int run_report(const oneside::RunReport& rep) {
    for (const auto& c : rep.checks)
        std::cout << (c.holds ? "PASS " : "FAIL ") << c.name
                  << (c.detail.empty() ? "" : "  [" + c.detail + "]") << "\n";
    std::cout << "report: " << oneside::run_directory() << "/"
              << rep.scenario.name << "/report.txt\n";
    return oneside::exit_code_for(rep);
}

oneside::RunReport run_by_name_or_path(const std::string& target) {
    if (target.size() > 4 &&
        target.compare(target.size() - 4, 4, ".cfg") == 0)
        return oneside::run_scenario_file(target);
    return oneside::run_scenario(oneside::shipped_scenario(target));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-sided inequality checks for conservation laws"};
    app.require_subcommand(1);

    // run
    std::string run_target;
    auto* run = app.add_subcommand("run", "run a scenario by name or .cfg path");
    run->add_option("scenario", run_target, "shipped name or config path")
        ->required();

    // list
    auto* list = app.add_subcommand("list", "list available scenarios");

    // plotdata
    std::string plot_target, plot_dir = "plotdata";
    auto* plot = app.add_subcommand(
        "plotdata", "run a scenario and emit overlay CSVs");
    plot->add_option("scenario", plot_target, "shipped name or config path")
        ->required();
    plot->add_option("--out", plot_dir, "output directory");

    // check group
    auto* check = app.add_subcommand("check", "run one inequality check");
    check->require_subcommand(1);
    std::string u_path, flux_label = "burgers";
    double t = 1.0, gamma = 2.0, tol = -1.0, ct = -1.0;
    for (auto* sub : {check}) (void)sub;

    auto* oleinik = check->add_subcommand("oleinik", "one-sided slope bound");
    oleinik->add_option("--u", u_path, "solution frame CSV")->required();
    oleinik->add_option("--flux", flux_label);
    oleinik->add_option("--t", t);

    auto* ab = check->add_subcommand("ab", "pressure curvature bound");
    ab->add_option("--u", u_path, "solution frame CSV")->required();
    ab->add_option("--gamma", gamma);
    ab->add_option("--t", t);

    auto* sweep = check->add_subcommand("sweep", "connectability sweep");
    sweep->add_option("--u", u_path, "solution frame CSV")->required();
    sweep->add_option("--flux", flux_label);
    bool sweep_pme = false;
    sweep->add_flag("--pme", sweep_pme, "sweep Barenblatt family instead");
    sweep->add_option("--gamma", gamma);
    sweep->add_option("--t", t);
    sweep->add_option("--tol", tol, "relative sign tolerance");

    auto* tv = check->add_subcommand("tv", "total-variation bound");
    tv->add_option("--u", u_path, "solution frame CSV")->required();
    tv->add_option("--t", t);
    tv->add_option("--ct", ct, "constant C(t); default 2/t");

    auto* adm = check->add_subcommand("admissibility", "jump chord test");
    adm->add_option("--u", u_path, "solution frame CSV")->required();
    adm->add_option("--flux", flux_label);

    // fundamental
    auto* fund = app.add_subcommand("fundamental",
                                    "write a fundamental-solution frame");
    std::string fund_kind = "nwave", out_path = "fundamental.csv";
    double fm = 1.0, fx_min = -1.0, fx_max = 4.0;
    int fn = 2000;
    fund->add_option("--kind", fund_kind, "nwave|barenblatt|heat");
    fund->add_option("--flux", flux_label);
    fund->add_option("--gamma", gamma);
    fund->add_option("--m", fm);
    fund->add_option("--t", t);
    fund->add_option("--grid-min", fx_min);
    fund->add_option("--grid-max", fx_max);
    fund->add_option("--n", fn);
    fund->add_option("--out", out_path);

    // heatnd
    auto* heat = app.add_subcommand("heatnd", "multi-d heat checks");
    std::string u0_path, heat_check = "psi", heat_x0 = "0,0";
    double heat_t = 1.0, heat_m = 1.0;
    heat->add_option("--u0", u0_path, "initial data CSV")->required();
    heat->add_option("--t", heat_t)->required();
    heat->add_option("--m", heat_m);
    heat->add_option("--x0", heat_x0, "comma-separated shift");
    heat->add_option("--check", heat_check, "psi|levelset");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return run_report(run_by_name_or_path(run_target));
        if (*list) {
            for (const auto& n : oneside::list_scenarios())
                std::cout << n << "\n";
            return 0;
        }
        if (*plot) {
            auto rep = run_by_name_or_path(plot_target);
            for (const auto& f : oneside::emit_plotdata(rep, plot_dir))
                std::cout << f << "\n";
            return oneside::exit_code_for(rep);
        }
        if (*oleinik) {
            auto u = oneside::read_frame_csv(u_path);
            auto f = oneside::flux_by_label(flux_label);
            auto v = oneside::oleinik_sup(u, f, t);
            return report_outcome(
                v.holds, "sup=" + std::to_string(v.sup) + " bound=" +
                             std::to_string(1.0 / t));
        }
        if (*ab) {
            auto u = oneside::read_frame_csv(u_path);
            auto v = oneside::ab_min(u, gamma, t);
            return report_outcome(
                v.holds, "min=" + std::to_string(v.min) + " bound=" +
                             std::to_string(-1.0 / (t * (gamma + 1.0))));
        }
        if (*sweep) {
            auto u = oneside::read_frame_csv(u_path);
            oneside::SweepSpec spec;
            spec.t = t;
            if (tol > 0.0) spec.tol = tol;
            spec.x0_values = oneside::SweepSpec::spread(
                u.grid.x_min, u.grid.x_max, 33);
            oneside::SweepVerdict v;
            if (sweep_pme) {
                v = oneside::connectability_sweep(
                    u, oneside::barenblatt_rho_provider(gamma, u.grid, t),
                    spec);
            } else {
                auto f = oneside::flux_by_label(flux_label);
                v = oneside::connectability_sweep(
                    u, oneside::nwave_rho_provider(f, u.grid, t, true), spec);
                oneside::reverify_sweep(
                    v, u, oneside::nwave_rho_provider(f, u.grid, t, false),
                    spec);
            }
            std::string where = v.holds ? ""
                                        : " m=" + std::to_string(v.m) +
                                              " x0=" + std::to_string(v.x0);
            return report_outcome(v.holds, "connectability sweep" + where);
        }
        if (*tv) {
            auto u = oneside::read_frame_csv(u_path);
            double c = ct > 0.0 ? ct : 2.0 / t;
            auto v = oneside::tv_bound_check(u, c, std::nullopt,
                                             1e-3 * u.max_value());
            return report_outcome(v.holds,
                                  "tv=" + std::to_string(v.tv) + " bound=" +
                                      std::to_string(v.bound));
        }
        if (*adm) {
            auto u = oneside::read_frame_csv(u_path);
            auto f = oneside::flux_by_label(flux_label);
            auto jumps = oneside::admissibility_verdict(u, f);
            bool all = true;
            for (const auto& j : jumps) {
                std::cout << "jump at x=" << j.location << " (" << j.u_left
                          << " -> " << j.u_right << "): "
                          << (j.admissible ? "admissible" : "inadmissible")
                          << "\n";
                all = all && j.admissible;
            }
            if (jumps.empty()) std::cout << "no jumps detected\n";
            return all ? 0 : 2;
        }
        if (*fund) {
            auto grid = oneside::make_uniform_grid(fx_min, fx_max, fn);
            oneside::GridFunction1D frame;
            if (fund_kind == "nwave")
                frame = oneside::nwave(oneside::flux_by_label(flux_label),
                                       oneside::Mass(fm), t, grid);
            else if (fund_kind == "barenblatt")
                frame = oneside::barenblatt(gamma, oneside::Mass(fm), t, grid);
            else if (fund_kind == "heat")
                frame = oneside::sample(
                    grid,
                    [&](double x) {
                        return oneside::heat_kernel(
                            oneside::Mass(fm), t, 1,
                            std::span<const double>(&x, 1));
                    },
                    t);
            else
                throw std::invalid_argument("unknown kind: " + fund_kind);
            oneside::write_csv(frame, out_path);
            std::cout << out_path << "\n";
            return 0;
        }
        if (*heat) {
            auto u0 = oneside::read_frame_csv_nd(u0_path);
            std::vector<double> x0;
            {
                std::string tokens = heat_x0;
                size_t pos = 0;
                while (pos != std::string::npos) {
                    size_t comma = tokens.find(',', pos);
                    std::string tok =
                        comma == std::string::npos
                            ? tokens.substr(pos)
                            : tokens.substr(pos, comma - pos);
                    if (!tok.empty()) x0.push_back(std::stod(tok));
                    pos = comma == std::string::npos ? comma : comma + 1;
                }
            }
            auto u = oneside::heat_convolve(u0, heat_t);
            if (heat_check == "psi") {
                auto psi = oneside::psi_field(u, oneside::Mass(heat_m), x0,
                                              heat_t);
                auto v = oneside::convexity_check(psi, 20);
                return report_outcome(v.holds,
                                      "psi convexity worst=" +
                                          std::to_string(v.worst));
            }
            if (heat_check == "levelset") {
                auto v = oneside::levelset_convexity(
                    u, oneside::Mass(heat_m), x0, heat_t,
                    1e-6 * heat_m / (12.566370614359172 * heat_t));
                return report_outcome(v.holds, "level set: " + v.detail);
            }
            throw std::invalid_argument("unknown check: " + heat_check);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
