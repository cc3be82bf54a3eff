// Acceptance battery: runs the twelve shipped scenarios, one per criterion,
// and prints one pass/fail line each.  Exit status 0 only when all pass.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include "oneside/harness.hpp"

namespace {

struct Criterion {
    const char* scenario;
    const char* summary;
};

const std::vector<Criterion> criteria = {
    {"nwave_oracle",
     "viscous Burgers delta data matches the closed-form N-wave"},
    {"oleinik_equality", "sampled N-wave attains the Oleinik bound 1/t"},
    {"burgers_equivalence",
     "Oleinik and connectability verdicts agree on the convex-flux family"},
    {"barenblatt_ab",
     "Barenblatt mass/pressure equalities and AB-sweep agreement"},
    {"lap_number",
     "sign changes of solution differences are non-increasing in time"},
    {"headline_connectability",
     "connectability sweep holds for every viscous solution"},
    {"no_wrinkles", "every fundamental frame is single-crested"},
    {"counterexample_quartic",
     "non-entropy jump caught by the background sweep and the chord test"},
    {"tv_bound", "TV ratio constant 2/t and TV bounds on solver frames"},
    {"similarity", "mass-scaling similarity law for fundamental solutions"},
    {"heat_2d", "2-D heat: psi convexity and level-set convexity"},
    {"steepness",
     "steepness scenarios clean; too-steep negative control flagged"},
};

}  // namespace

int main() {
    setenv("ONESIDE_RUN_DIR", "runs_acceptance", 0);
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        bool ok = false;
        std::string detail;
        try {
            oneside::RunReport rep =
                oneside::run_scenario(oneside::shipped_scenario(c.scenario));
            ok = rep.all_hold();
            if (!ok)
                for (const auto& chk : rep.checks)
                    if (!chk.holds) {
                        detail = chk.name +
                                 (chk.detail.empty() ? "" : ": " + chk.detail);
                        break;
                    }
        } catch (const std::exception& e) {
            detail = e.what();
        }
        std::printf("criterion %2zu [%s] %s -- %s%s%s\n", i + 1, c.scenario,
                    c.summary, ok ? "PASS" : "FAIL",
                    detail.empty() ? "" : " (", detail.empty() ? "" : (detail + ")").c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
