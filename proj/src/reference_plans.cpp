#include "ccot/reference_plans.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

#include "ccot/capacity.hpp"
#include "ccot/marginal.hpp"

namespace ccot {

namespace {

void require_even(int n) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(
        "reference plans need an even cell count per axis");
  }
}

Rational midpoint_dot(const Grid& grid_x, const Grid& grid_y, int i, int j) {
  const auto x = grid_x.midpoint(i);
  const auto y = grid_y.midpoint(j);
  Rational sum = 0;
  for (size_t axis = 0; axis < x.size(); ++axis) sum += x[axis] * y[axis];
  return sum;
}

}  // namespace

TransportPlan reference_checkerboard(int n) {
  require_even(n);
  const Grid grid = build_grid(1, n, Domain::CENTERED);
  const Rational brick = make_rational(2, static_cast<long long>(n) * n);
  std::vector<Rational> mass(static_cast<size_t>(n) * n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (grid.axis_midpoint(i) * grid.axis_midpoint(j) > 0) {
        mass[i * n + j] = brick;
      }
    }
  }
  return TransportPlan(grid, grid, std::move(mass));
}

SignPlanResult reference_sign_plan(int dimension, int n) {
  if (dimension != 1 && dimension != 2) {
    throw std::invalid_argument("sign plan supports dimensions 1 and 2");
  }
  require_even(n);

  const Grid grid = build_grid(dimension, n, Domain::CENTERED);
  const int cells = grid.num_cells();
  const Rational pair_volume = grid.cell_volume() * grid.cell_volume();
  const Rational bound = 2 * pair_volume;

  std::vector<Rational> mass(static_cast<size_t>(cells) * cells, Rational(0));
  std::string deficiency;
  for (int i = 0; i < cells && deficiency.empty(); ++i) {
    Rational row_sum = 0;
    std::vector<int> zero_partners;
    for (int j = 0; j < cells; ++j) {
      const Rational dot = midpoint_dot(grid, grid, i, j);
      if (dot > 0) {
        mass[i * cells + j] = bound;
        row_sum += bound;
      } else if (dot == 0) {
        zero_partners.push_back(j);
      }
    }
    const Rational residual = grid.cell_volume() - row_sum;
    if (residual < 0) {
      deficiency = "positive-product pairs alone overfill a row";
    } else if (residual > 0) {
      if (zero_partners.empty()) {
        deficiency = "row residual has no zero-product pair to carry it";
      } else {
        const Rational share =
            residual / static_cast<long long>(zero_partners.size());
        if (share > bound) {
          deficiency = "zero-product share exceeds the capacity bound";
        } else {
          for (const int j : zero_partners) mass[i * cells + j] = share;
        }
      }
    }
  }

  SignPlanResult result{TransportPlan(grid, grid, std::move(mass)), false,
                        std::move(deficiency)};
  if (result.deficiency.empty()) {
    const DiscreteMarginal uniform = uniform_marginal(grid);
    const CapacityMatrix capacity = build_capacity(grid, grid, Rational(2));
    if (check_feasible(result.plan, uniform, uniform, capacity).is_feasible) {
      result.feasible = true;
    } else {
      result.deficiency = "row-wise construction breaks a column sum or bound";
    }
  }
  return result;
}

}  // namespace ccot
