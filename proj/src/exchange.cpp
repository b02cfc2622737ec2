#include "ccot/exchange.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ccot {

namespace {

void validate_indices(const TransportPlan& plan, const ExchangeQuad& quad) {
  const int rows = plan.rows(), cols = plan.cols();
  if (quad.row_a < 0 || quad.row_a >= rows || quad.row_b < 0 ||
      quad.row_b >= rows || quad.col_a < 0 || quad.col_a >= cols ||
      quad.col_b < 0 || quad.col_b >= cols) {
    throw std::invalid_argument("exchange indices out of range");
  }
  if (quad.row_a == quad.row_b || quad.col_a == quad.col_b) {
    throw std::invalid_argument("exchange rows and columns must be distinct");
  }
}

}  // namespace

Rational exchange_delta(const CostMatrix& cost, const ExchangeQuad& quad) {
  return cost.at(quad.row_a, quad.col_a) + cost.at(quad.row_b, quad.col_b) -
         cost.at(quad.row_a, quad.col_b) - cost.at(quad.row_b, quad.col_a);
}

Rational max_exchange_amount(const TransportPlan& plan,
                             const CapacityMatrix& capacity,
                             const ExchangeQuad& quad) {
  validate_indices(plan, quad);
  Rational amount = capacity.at(quad.row_a, quad.col_a) -
                    plan.at(quad.row_a, quad.col_a);
  amount = std::min(amount, capacity.at(quad.row_b, quad.col_b) -
                                plan.at(quad.row_b, quad.col_b));
  amount = std::min(amount, plan.at(quad.row_a, quad.col_b));
  amount = std::min(amount, plan.at(quad.row_b, quad.col_a));
  return amount;
}

TransportPlan apply_exchange(const TransportPlan& plan,
                             const ExchangeQuad& quad,
                             const CapacityMatrix& capacity) {
  validate_indices(plan, quad);
  if (quad.amount < 0 || quad.amount > max_exchange_amount(plan, capacity, quad)) {
    throw std::invalid_argument("exchange amount infeasible for this plan");
  }
  std::vector<Rational> mass = plan.mass();
  const int cols = plan.cols();
  mass[quad.row_a * cols + quad.col_a] += quad.amount;
  mass[quad.row_b * cols + quad.col_b] += quad.amount;
  mass[quad.row_a * cols + quad.col_b] -= quad.amount;
  mass[quad.row_b * cols + quad.col_a] -= quad.amount;
  return TransportPlan(plan.grid_x(), plan.grid_y(), std::move(mass));
}

ExchangeScan scan_exchanges(const TransportPlan& plan, const CostMatrix& cost,
                            const CapacityMatrix& capacity) {
  if (plan.rows() != cost.rows() || plan.cols() != cost.cols() ||
      plan.rows() != capacity.rows() || plan.cols() != capacity.cols()) {
    throw std::invalid_argument("exchange scan shapes disagree");
  }
  const int rows = plan.rows(), cols = plan.cols();

  ExchangeScan scan;
  scan.min_delta = 0;
  bool found_admissible = false;

  auto consider = [&](int ra, int rb, int ca, int cb) {
    ExchangeQuad quad{ra, rb, ca, cb, Rational(0)};
    const Rational amount = max_exchange_amount(plan, capacity, quad);
    ++scan.quads_scanned;
    if (amount <= 0) return;
    const Rational delta = exchange_delta(cost, quad);
    if (!found_admissible || delta < scan.min_delta) {
      scan.min_delta = delta;
      quad.amount = amount;
      scan.witness = quad;
    }
    found_admissible = true;
  };

  if (std::max(rows, cols) <= kExhaustiveScanLimit) {
    // Swapping both row and column pairs reproduces the same quad, so rows
    // are taken ordered and columns in both orders.
    for (int ra = 0; ra < rows; ++ra)
      for (int rb = ra + 1; rb < rows; ++rb)
        for (int ca = 0; ca < cols; ++ca)
          for (int cb = 0; cb < cols; ++cb)
            if (ca != cb) consider(ra, rb, ca, cb);
  } else {
    scan.exhaustive = false;
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<int> row_dist(0, rows - 1);
    std::uniform_int_distribution<int> col_dist(0, cols - 1);
    for (std::int64_t k = 0; k < kSampledScanCount; ++k) {
      int ra = row_dist(rng), rb = row_dist(rng);
      int ca = col_dist(rng), cb = col_dist(rng);
      if (ra == rb || ca == cb) continue;
      // Swapping both pairs leaves the perturbation unchanged; canonicalize
      // to ordered rows.
      if (ra > rb) {
        std::swap(ra, rb);
        std::swap(ca, cb);
      }
      consider(ra, rb, ca, cb);
    }
  }

  if (scan.min_delta >= 0) scan.witness.reset();
  return scan;
}

}  // namespace ccot
