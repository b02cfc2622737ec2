#pragma once

#include <cstdint>
#include <optional>

#include "ccot/plan.hpp"

namespace ccot {

// A marginal-preserving four-cell perturbation: adds `amount` at (row_a,col_a)
// and (row_b,col_b), subtracts it at (row_a,col_b) and (row_b,col_a). Row and
// column sums are unchanged by construction.
struct ExchangeQuad {
  int row_a = 0;
  int row_b = 0;
  int col_a = 0;
  int col_b = 0;
  Rational amount;  // >= 0; 0 is the identity perturbation
};

// Cost change per unit of exchanged mass:
// c[ra][ca] + c[rb][cb] - c[ra][cb] - c[rb][ca].
Rational exchange_delta(const CostMatrix& cost, const ExchangeQuad& quad);

// Largest amount the plan and capacity admit for this quad's index pattern.
Rational max_exchange_amount(const TransportPlan& plan,
                             const CapacityMatrix& capacity,
                             const ExchangeQuad& quad);

// Applies the perturbation. The result has the same marginals; its cost
// differs by amount * exchange_delta. Throws if the amount is infeasible.
TransportPlan apply_exchange(const TransportPlan& plan,
                             const ExchangeQuad& quad,
                             const CapacityMatrix& capacity);

struct ExchangeScan {
  // Minimum per-unit delta over quads that admit a positive amount;
  // 0 when no quad admits one.
  Rational min_delta;
  // Present iff min_delta < 0; the lexicographically first minimizer,
  // carrying its maximal feasible amount.
  std::optional<ExchangeQuad> witness;
  std::int64_t quads_scanned = 0;
  bool exhaustive = true;
};

// Exhaustive over all quadruples when both sides have at most
// `kExhaustiveScanLimit` cells; uniform fixed-seed sample of 10^6
// quadruples above that.
inline constexpr int kExhaustiveScanLimit = 16;
inline constexpr std::int64_t kSampledScanCount = 1000000;

ExchangeScan scan_exchanges(const TransportPlan& plan, const CostMatrix& cost,
                            const CapacityMatrix& capacity);

}  // namespace ccot
