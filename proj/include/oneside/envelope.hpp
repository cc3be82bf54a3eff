#pragma once

#include <string>
#include <vector>

#include "oneside/flux.hpp"

namespace oneside {

// Piecewise description of the lower convex or upper concave hull of a flux
// on a state interval [base, u_bar].  Linear pieces encode the shocks of the
// fundamental solution, follows_flux pieces its continuous rarefactions.
struct Envelope {
    enum class Kind { lower_convex, upper_concave };
    struct Segment {
        double u_lo, u_hi;
        enum class Shape { linear, follows_flux } shape;
        double value_lo, value_hi;  // envelope values at the segment ends
    };

    double base = 0.0;
    double u_bar = 1.0;
    Kind kind = Kind::lower_convex;
    std::vector<Segment> segments;
    Flux flux;

    double value(double u) const;
};

Envelope convex_envelope(const Flux& f, double base, double u_bar,
                         int n_samples = 4096);
Envelope concave_envelope(const Flux& f, double base, double u_bar,
                          int n_samples = 4096);

// One shock per linear segment: increasing (u_lo -> u_hi reading left state
// to right state) for the lower convex envelope, decreasing for the upper
// concave one.  Speed is the Rankine-Hugoniot chord slope.
struct ShockCandidate {
    double u_left, u_right, speed;
};

std::vector<ShockCandidate> shocks_of_envelope(const Envelope& e);

// CSV: u_lo,u_hi,shape,value_lo,value_hi
std::string to_csv(const Envelope& e);

}  // namespace oneside
