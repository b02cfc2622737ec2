#pragma once

#include <optional>
#include <vector>

#include "ccot/capacity.hpp"
#include "ccot/cost.hpp"
#include "ccot/marginal.hpp"
#include "ccot/plan.hpp"
#include "ccot/solver.hpp"

namespace ccot {

// Holder conjugate exponents: p, q > 1 with 1/p + 1/q = 1.
struct ConjugatePair {
  Rational p;
  Rational q;

  // q = p/(p-1); requires p > 1.
  explicit ConjugatePair(Rational exponent);
};

// Maps a plan that is feasible for the constant density-p capacity (uniform
// marginals, centered grids) to one feasible for density q with the same
// marginals:
//   k[i][j] = (q/p) * (u_p - m[i][sigma(j)]),  sigma = y-index reflection.
// Under the bilinear cost the image's cost is exactly (q/p) times the
// input's. Applying the map again with the pair built from q restores the
// original plan.
TransportPlan conjugate_transform(const TransportPlan& plan,
                                  const ConjugatePair& pair,
                                  const CapacityMatrix& capacity_p);

// Both sides of the complement cost identity: weighting every cell pair by
// the density-1 capacity (vol_x * vol_y),
//   sum_W c + sum_{W complement} c = -b(X) . b(Y)
// where W is the saturated set and b is the center of mass of the uniform
// marginal. The split into W and its complement is the point; their total
// is pinned by the centers alone.
struct ComplementIdentity {
  Rational lhs;  // saturated sum plus complement sum
  Rational rhs;  // -b(X) . b(Y)
  bool holds = false;
};

ComplementIdentity cost_complement_identity(const SaturationPattern& pattern,
                                            const Grid& grid_x,
                                            const Grid& grid_y,
                                            const CostMatrix& cost);

// Convenience: derives the pattern from the plan first.
ComplementIdentity cost_complement_identity(const TransportPlan& plan,
                                            const CostMatrix& cost,
                                            const CapacityMatrix& capacity);

// Mass-weighted mean of the cell midpoints, one coordinate per axis.
std::vector<Rational> center_of_mass(const DiscreteMarginal& marginal);

// Problem symmetries under which an optimal plan maps to an optimal plan.
enum class SymmetryTransform { TRANSPOSE, NEGATE, CONJUGATE_REFLECT };

struct SymmetryReport {
  SymmetryTransform transform;
  FeasibilityReport image_feasibility;  // exact defects of the image
  Rational image_cost;
  Rational expected_cost;
  bool pass = false;  // image exactly feasible and cost matches exactly
};

// Applies the transform to the solved plan and checks, exactly, that the
// image is feasible for the transformed problem and that its cost equals
// the transformed optimal value. Value-level assertion only: discrete
// optima need not be unique, so plans are never compared directly.
//
// TRANSPOSE needs f = g with symmetric cost and capacity; NEGATE needs
// centered grids, the bilinear cost, and reflection-symmetric data;
// CONJUGATE_REFLECT needs the conjugate pair plus a constant density-p
// capacity with uniform marginals (expected cost scales by q/p). Throws
// std::invalid_argument when the problem lacks the requested symmetry.
SymmetryReport verify_symmetric_optimality(
    const SolveResult& result, SymmetryTransform transform,
    const DiscreteMarginal& f, const DiscreteMarginal& g,
    const CostMatrix& cost, const CapacityMatrix& capacity,
    const std::optional<ConjugatePair>& pair = std::nullopt);

}  // namespace ccot
