#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "oneside/harness.hpp"

using namespace oneside;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("scenario parsing") {
    Scenario s = parse_scenario(
        "# comment\n"
        "scenario = oleinik_equality\n"
        "seed = 99\n"
        "t = 2.0\n"
        "grid.n = 500\n");
    CHECK(s.name == "oleinik_equality");
    CHECK(s.seed == 99);
    CHECK(s.get("t", 1.0) == doctest::Approx(2.0));
    CHECK(s.get_int("grid.n", 0) == 500);
    CHECK(s.get("absent", 7.5) == doctest::Approx(7.5));
}

TEST_CASE("scenario parsing reports every problem at once") {
    try {
        parse_scenario(
            "scenario = no_such_scenario_name\n"
            "dangling line without equals\n");
        FAIL("expected a parse exception");
    } catch (const std::exception& e) {
        std::string msg = e.what();
        CHECK(msg.find("no_such_scenario_name") != std::string::npos);
        CHECK(msg.find("dangling line") != std::string::npos);
    }
}

TEST_CASE("shipped catalog") {
    auto names = shipped_scenario_names();
    CHECK(names.size() == 12);
    for (const auto& n : names) CHECK_NOTHROW(shipped_scenario(n));
    CHECK_THROWS(shipped_scenario("definitely_not_shipped"));

    auto listed = list_scenarios();
    CHECK(listed.size() >= names.size());
}

TEST_CASE("run_scenario is deterministic and reports exit codes") {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "oneside_harness_test";
    fs::remove_all(base);

    Scenario s = shipped_scenario("oleinik_equality");

    setenv("ONESIDE_RUN_DIR", (base / "a").c_str(), 1);
    RunReport ra = run_scenario(s);
    setenv("ONESIDE_RUN_DIR", (base / "b").c_str(), 1);
    RunReport rb = run_scenario(s);
    unsetenv("ONESIDE_RUN_DIR");

    CHECK(ra.all_hold());
    CHECK(exit_code_for(ra) == 0);
    REQUIRE(ra.artifacts.size() == rb.artifacts.size());
    int csv_count = 0;
    for (size_t i = 0; i < ra.artifacts.size(); ++i) {
        // identical config + seed => byte-identical CSV artifacts
        // (report.txt also records wall-clock, so only CSVs are compared)
        if (ra.artifacts[i].size() < 4 ||
            ra.artifacts[i].substr(ra.artifacts[i].size() - 4) != ".csv")
            continue;
        ++csv_count;
        CHECK(slurp(ra.artifacts[i]) == slurp(rb.artifacts[i]));
    }
    CHECK(csv_count > 0);

    // a failing check maps to exit code 2
    RunReport fake = ra;
    fake.checks.push_back({"synthetic_failure", false, ""});
    CHECK(!fake.all_hold());
    CHECK(exit_code_for(fake) == 2);

    fs::remove_all(base);
}

TEST_CASE("scenario files round-trip through the run directory") {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "oneside_harness_cfg";
    fs::remove_all(base);
    fs::create_directories(base);
    fs::path cfg = base / "quick.cfg";
    {
        std::ofstream out(cfg);
        out << "scenario = oleinik_equality\n"
            << "t = 0.5\n";
    }
    setenv("ONESIDE_RUN_DIR", (base / "runs").c_str(), 1);
    RunReport r = run_scenario_file(cfg.string());
    unsetenv("ONESIDE_RUN_DIR");
    CHECK(r.all_hold());
    CHECK(r.scenario.get("t", 1.0) == doctest::Approx(0.5));
    // config echo preserves the parsed keys for provenance
    CHECK(r.config_echo.find("t=0.5") != std::string::npos);
    CHECK(r.config_echo.find("kind=oleinik_equality") != std::string::npos);

    CHECK_THROWS(run_scenario_file((base / "missing.cfg").string()));
    fs::remove_all(base);
}

TEST_CASE("plot data emission") {
    namespace fs = std::filesystem;
    fs::path base = fs::temp_directory_path() / "oneside_harness_plot";
    fs::remove_all(base);
    fs::create_directories(base);

    Grid1D g = make_uniform_grid(-1.0, 1.0, 20);
    auto u = sample(g, [](double x) { return x * x; }, 1.0);
    auto rho = sample(g, [](double x) { return 0.5 - x * x; }, 1.0);
    RunReport r;
    r.scenario.name = "plot_test";
    r.overlays.push_back({1.0, 1.0, 0.0, 0.0, u, rho});

    auto files = emit_plotdata(r, (base / "plots").string());
    CHECK(files.size() == r.overlays.size());
    for (const auto& f : files) {
        std::string text = slurp(f);
        CHECK(text.find("x,u,rho,e,sign") != std::string::npos);
    }
    fs::remove_all(base);
}
