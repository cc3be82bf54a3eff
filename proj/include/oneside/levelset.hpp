#pragma once

#include <optional>
#include <array>
#include <vector>

#include "oneside/grid.hpp"

namespace oneside {

// Thresholded sign of a difference function e on the grid nodes:
// +1 where e > tol, -1 where e < -tol, 0 otherwise.
struct SignPattern {
    std::vector<int> signs;
    double tol = 0.0;
    std::vector<double> nodes;  // node coordinates, for witness reporting
};

SignPattern sign_pattern(const GridFunction1D& e, double tol);
SignPattern sign_pattern_of(const std::vector<int>& signs);  // test helper

// Connectability by adding zeros: the positive set is connectable iff the
// zeros-deleted sign sequence contains no +,-,+ subsequence.
struct ConnectabilityReport {
    bool connectable = true;
    int plus_components = 0;
    std::optional<std::array<double, 3>> witness;  // (x1, x2, x3), signs +,-,+
};

ConnectabilityReport is_connectable(const SignPattern& s);

// Number of strict alternations of the zeros-deleted sign sequence.
int sign_change_count(const SignPattern& s);

// Number of direction reversals of the tol-filtered difference sequence;
// plateaus (|delta| <= tol) do not count as reversals.
int monotonicity_changes(const GridFunction1D& u, double tol);

// Steepness comparison of a bounded solution u against a shifted fundamental
// solution rho on one grid.  Finds maximal intersection intervals and
// classifies each into the four local scenarios; scenarios that forbid rho
// from exceeding u beyond the interval are checked and violations reported.
struct SteepnessInterval {
    double a, b;
    char scenario;  // 'a'..'d', or '-' when a flank is missing/degenerate
    bool violation = false;
    double violation_x = 0.0;
};

struct SteepnessReport {
    std::vector<SteepnessInterval> intervals;
    bool any_violation = false;
};

SteepnessReport steepness_classify(const GridFunction1D& u,
                                   const GridFunction1D& rho_shifted, double t,
                                   double tol, double delta = 0.0);

}  // namespace oneside
