#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oneside/flux.hpp"
#include "oneside/grid.hpp"
#include "oneside/levelset.hpp"

namespace oneside {

// Discretization of the paper's "for all m, x0, c" quantifiers.
struct SweepSpec {
    std::vector<double> m_values{0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0};
    std::vector<double> x0_values;
    std::vector<double> c_values{0.0};
    double t = 1.0;
    double tol = 1e-6;  // relative connectability tolerance on e

    static std::vector<double> spread(double lo, double hi, int n);
};

struct SweepEntry {
    double m, x0, c;
    ConnectabilityReport report;
};

struct SweepVerdict {
    bool holds = true;
    double m = 0.0, x0 = 0.0, c = 0.0;  // first violating parameters
    std::optional<std::array<double, 3>> witness;
    std::vector<SweepEntry> log;
};

// rho_provider(m, x0, c) returns rho_m^c(. - x0) sampled on u's grid.
using RhoProvider =
    std::function<GridFunction1D(double m, double x0, double c)>;

SweepVerdict connectability_sweep(const GridFunction1D& u,
                                  const RhoProvider& provider,
                                  const SweepSpec& spec);

// Closed-form providers.  The fast N-wave path tabulates the rarefaction
// ramp once per (m, c) and interpolates; pair it with reverify_sweep so that
// lookup noise cannot fabricate a witness.
RhoProvider nwave_rho_provider(const Flux& f, const Grid1D& grid, double t,
                               bool fast = true);
RhoProvider barenblatt_rho_provider(double gamma, const Grid1D& grid,
                                    double t);

// Re-checks every flagged entry of a sweep with an exact provider, keeping
// only confirmed violations.
void reverify_sweep(SweepVerdict& v, const GridFunction1D& u,
                    const RhoProvider& exact, const SweepSpec& spec);

struct OleinikVerdict {
    double sup = 0.0;
    bool holds = true;
    double x1 = 0.0, x2 = 0.0;  // adjacent pair attaining the sup
};

// max over adjacent node pairs of (f'(u(x_{i+1})) - f'(u(x_i))) / dx; the
// pairwise sup equals this by telescoping.
OleinikVerdict oleinik_sup(const GridFunction1D& u, const Flux& f, double t,
                           double tol = 1e-9);

struct AbVerdict {
    double min = 0.0;
    bool holds = true;
    double x = 0.0;  // node attaining the min
};

// min over interior nodes of the centered second difference of the pressure
// (gamma/(gamma-1)) u^(gamma-1), evaluated on {u > u_floor} for gamma > 1.
AbVerdict ab_min(const GridFunction1D& u, double gamma, double t,
                 double u_floor = 1e-10, double tol = 1e-9);

struct EquivalenceResult {
    bool agree = false;
    bool inequality_holds = false;
    bool sweep_holds = false;
    SweepVerdict sweep;
    double witness_x0 = 0.0;   // sweep witness shift
    double formula_x0 = 0.0;   // shift predicted from the violating data
    bool formula_valid = false;
};

// Oleinik verdict vs connectability sweep with the exact N-wave provider
// (c = 0).  When the inequality fails, shift candidates around
// x0 = (x1+x2)/2 - t [f'(u(x1)) + f'(u(x2))]/2 are added to the sweep.
EquivalenceResult equivalence_oleinik(const GridFunction1D& u, const Flux& f,
                                      double t, SweepSpec spec);

// Aronson-Benilan verdict vs connectability sweep with the exact Barenblatt
// provider; m is extended upward until max(rho_m) >= 2 max(u).
EquivalenceResult equivalence_ab(const GridFunction1D& u, double gamma,
                                 double t, SweepSpec spec);

struct TvRatioResult {
    double ratio = 0.0;  // sup over the (c, m) sweep
    double at_m = 0.0, at_c = 0.0;
    std::vector<std::string> warnings;
};

// C(t) = sup_{c,m} 2 sup_x(rho_m^c - c) / |supp(rho_m^c - c)|.
TvRatioResult tv_ratio_constant(const RhoProvider& provider,
                                const SweepSpec& spec,
                                double support_floor_rel = 1e-3);

struct TvBoundVerdict {
    bool holds = true;
    double tv = 0.0;
    double bound = 0.0;
};

TvBoundVerdict tv_bound_check(const GridFunction1D& u, double c_t,
                              std::optional<std::pair<double, double>> interval =
                                  std::nullopt,
                              double support_floor = 0.0, double tol = 1e-9);

struct JumpVerdict {
    double location;
    double u_left, u_right;
    bool admissible;
};

// Detects numerical discontinuities (|du| > threshold across <= 3 cells),
// extracts the side states by 5-node plateau averaging and runs the chord
// test on each.
std::vector<JumpVerdict> admissibility_verdict(const GridFunction1D& u,
                                               const Flux& f,
                                               double jump_threshold = 0.0);

}  // namespace oneside
