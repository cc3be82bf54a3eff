#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "oneside/grid.hpp"

namespace oneside {

// A named, fully parameterized run of one check pipeline.  All knobs live in
// the flat key=value map so that a config file echoes byte-for-byte into the
// report.
struct Scenario {
    std::string name;
    std::string kind;
    std::uint64_t seed = 2026;
    std::map<std::string, std::string> params;

    double get(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::string get_str(const std::string& key,
                        const std::string& fallback) const;
    std::vector<double> get_list(const std::string& key,
                                 const std::vector<double>& fallback) const;
};

struct CheckOutcome {
    std::string name;
    bool holds = false;
    std::string detail;
};

// One (t, m, x0, c) overlay kept for plotting: u, rho and their difference.
struct OverlayFrame {
    double t = 0.0, m = 0.0, x0 = 0.0, c = 0.0;
    GridFunction1D u, rho;
};

struct RunReport {
    Scenario scenario;
    std::vector<CheckOutcome> checks;
    std::vector<std::string> artifacts;
    std::vector<OverlayFrame> overlays;
    double wall_seconds = 0.0;
    std::string config_echo;

    bool all_hold() const;
};

// Flat key=value parsing ('#' comments, blank lines ignored); every problem
// is reported in one exception message.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Built-in scenarios, one per acceptance check; a config file may select one
// by name (scenario=...) and override individual keys.
std::vector<std::string> shipped_scenario_names();
Scenario shipped_scenario(const std::string& name);

// ONESIDE_RUN_DIR when set, else ./runs
std::string run_directory();

// Executes the scenario pipeline, writes report.txt plus CSV artifacts under
// run_directory()/<name>, and returns the report.  Deterministic for a fixed
// seed.  Check violations are recorded, not thrown.
RunReport run_scenario(const Scenario& s);
RunReport run_scenario_file(const std::string& path);

// Shipped catalog plus any configs found in the run directory.
std::vector<std::string> list_scenarios();

// Writes overlay CSVs (columns x,u,rho,e,sign) for every overlay kept by the
// run; returns the file paths.
std::vector<std::string> emit_plotdata(const RunReport& report,
                                       const std::string& dir);

// 0 when every check holds, 2 when some check is violated.
int exit_code_for(const RunReport& report);

}  // namespace oneside
