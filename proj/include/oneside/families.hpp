#pragma once

#include <cstdint>
#include <vector>

#include "oneside/flux.hpp"
#include "oneside/grid.hpp"
#include "oneside/heat_nd.hpp"

namespace oneside {

// Deterministic family of smooth strictly convex fluxes
// f(u) = a2 u^2 + a3 u^3 + a4 u^4 with a2 > 0, a3, a4 >= 0 (so f'' is
// positive and nondecreasing on u >= 0).
std::vector<Flux> convex_flux_family(int count, std::uint64_t seed);

// Test profile for member `index` of a convex-flux family at time t:
//   index % 3 == 0  exact fundamental profile        (entropy: holds)
//   index % 3 == 1  scaled-down fundamental profile  (entropy: holds)
//   index % 3 == 2  mirrored fundamental profile     (reversed jump: fails)
// The profile mass/scale are drawn deterministically from (seed, index).
GridFunction1D convex_family_profile(const Flux& f, int index, double t,
                                     const Grid1D& grid, std::uint64_t seed);
bool convex_family_member_holds(int index);

// Porous-medium / fast-diffusion profile family over gamma in {1/2, 2}:
//   index % 3 == 0  exact Barenblatt profile                     (holds)
//   index % 3 == 1  safely scaled Barenblatt (down for gamma>1,
//                   up for gamma<1)                              (holds)
//   index % 3 == 2  Barenblatt with a localized dimple           (fails)
struct PmeMember {
    double gamma;
    int index;
};

std::vector<PmeMember> pme_family(int count);
GridFunction1D pme_family_profile(const PmeMember& member, double t,
                                  const Grid1D& grid, std::uint64_t seed);
bool pme_family_member_holds(const PmeMember& member);

// Nonnegative, compactly supported sum of 1..max_bumps C^1 bumps
// h (1 - |x-c|^2/w^2)_+^2, plus a constant background.
GridFunction1D random_bumps(const Grid1D& grid, std::uint64_t seed,
                            int max_bumps = 3, double background = 0.0,
                            double support_radius = 2.0);

// 2-D analogue on a tensor grid.
GridFunctionND random_bumps_2d(const std::vector<Grid1D>& axes,
                               std::uint64_t seed, int max_bumps = 4,
                               double support_radius = 2.0);

}  // namespace oneside
