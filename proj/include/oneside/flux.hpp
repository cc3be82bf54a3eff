#pragma once

#include <functional>
#include <string>
#include <vector>

namespace oneside {

// Scalar flux f with derivative, normalized at construction so that
// f(0) = f'(0) = 0.  Chord geometry (and hence every admissibility verdict)
// is invariant under that linear shift.
struct Flux {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::string label;
    enum class Hint { convex, single_inflection, general } hint = Hint::general;
    double u_max = 1.0;  // upper end of the working range [0, u_max]

    double operator()(double u) const { return eval(u); }
};

// Builds a normalized flux and verifies deriv against central finite
// differences on the working range.
Flux make_flux(std::function<double(double)> eval,
               std::function<double(double)> deriv, std::string label,
               Flux::Hint hint, double u_max);

// Canonical test instances.
Flux burgers_flux();            // u^2/2, convex
Flux cubic_flux();              // u^3/3, convex on u >= 0
Flux buckley_leverett_flux();   // u^2/(u^2+(1-u)^2), single inflection
Flux quartic_flux();            // u^4/4 - u^3 + u^2, two inflections

// Piecewise-linear flux from sampled (u, f) pairs with strictly monotone u.
Flux flux_from_table(const std::vector<double>& u,
                     const std::vector<double>& f, std::string label);
Flux flux_from_table_csv(const std::string& path, std::string label = "table");

// Looks up a shipped flux by label ("burgers", "cubic", "buckley_leverett",
// "quartic"); throws listing the known labels otherwise.
Flux flux_by_label(const std::string& label);

// Inverse of f' by bisection: returns g(y) with f'(g(y)) = y.
double rarefaction_profile(const Flux& f, double y);

// Oleinik chord test for the jump u_left -> u_right.  Walking the chord from
// the left state to the right state must keep the graph of f weakly on the
// left: for a decreasing jump f <= chord + tol, for an increasing jump
// f >= chord - tol, checked at >= 1000 interior samples.
bool chord_admissible(const Flux& f, double u_left, double u_right, double tol);
bool chord_admissible(const Flux& f, double u_left, double u_right);

}  // namespace oneside
