#pragma once

#include <string>

#include "ccot/plan.hpp"

namespace ccot {

// The block-checkerboard plan on centered 1-d grids with n cells per side:
// mass 2/n^2 on every cell pair whose midpoints have a positive product,
// zero elsewhere. Feasible for uniform marginals under the density-2
// capacity, saturating exactly the positive-product pairs; its bilinear
// cost is -1/16 for every even n. Odd n is rejected (a midpoint would sit
// at 0, where the sign rule is ambiguous).
TransportPlan reference_checkerboard(int n);

// The sign plan on centered d-dimensional grids (d in {1,2}), built from
// W = {<x,y> > 0}: capacity-saturating mass 2*vol^2 on positive-product
// pairs, zero on negative pairs, and each row's residual mass spread
// uniformly over its zero-product partners (present only for d = 2).
// The constructor never guesses: when the spread violates a bound or the
// residual has nowhere to go, it reports the deficiency instead.
struct SignPlanResult {
  TransportPlan plan;
  bool feasible = false;    // exact feasibility, uniform marginals, density 2
  std::string deficiency;   // empty iff feasible
};

SignPlanResult reference_sign_plan(int dimension, int n);

}  // namespace ccot
