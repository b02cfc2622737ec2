#include "ccot/symmetry.hpp"

#include <stdexcept>
#include <utility>

namespace ccot {

namespace {

bool reflection_symmetric(const DiscreteMarginal& marginal) {
  const Grid& grid = marginal.grid();
  for (int i = 0; i < grid.num_cells(); ++i) {
    if (marginal.mass(i) != marginal.mass(grid.reflect_index(i))) return false;
  }
  return true;
}

bool capacity_symmetric(const CapacityMatrix& capacity) {
  if (capacity.rows() != capacity.cols()) return false;
  for (int i = 0; i < capacity.rows(); ++i) {
    for (int j = 0; j < i; ++j) {
      if (capacity.at(i, j) != capacity.at(j, i)) return false;
    }
  }
  return true;
}

bool capacity_reflection_symmetric(const CapacityMatrix& capacity,
                                   const Grid& grid_x, const Grid& grid_y) {
  for (int i = 0; i < capacity.rows(); ++i) {
    for (int j = 0; j < capacity.cols(); ++j) {
      if (capacity.at(i, j) !=
          capacity.at(grid_x.reflect_index(i), grid_y.reflect_index(j))) {
        return false;
      }
    }
  }
  return true;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational sum = 0;
  for (size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

}  // namespace

ConjugatePair::ConjugatePair(Rational exponent) : p(std::move(exponent)) {
  if (p <= 1) {
    throw std::invalid_argument("conjugate exponent must exceed 1");
  }
  q = p / (p - 1);
}

TransportPlan conjugate_transform(const TransportPlan& plan,
                                  const ConjugatePair& pair,
                                  const CapacityMatrix& capacity_p) {
  const Grid& gx = plan.grid_x();
  const Grid& gy = plan.grid_y();
  if (gx.domain() != Domain::CENTERED || gy.domain() != Domain::CENTERED) {
    throw std::invalid_argument(
        "conjugate transform needs centered (balanced) grids");
  }
  const auto& density = capacity_p.constant_density();
  if (!density || *density != pair.p) {
    throw std::invalid_argument(
        "conjugate transform needs a constant capacity of density p");
  }
  const DiscreteMarginal f = uniform_marginal(gx);
  const DiscreteMarginal g = uniform_marginal(gy);
  if (!check_feasible(plan, f, g, capacity_p).is_feasible) {
    throw std::invalid_argument(
        "conjugate transform input is not a feasible uniform-marginal plan");
  }

  const Rational bound = pair.p * gx.cell_volume() * gy.cell_volume();
  const Rational scale = pair.q / pair.p;
  const int rows = plan.rows(), cols = plan.cols();
  std::vector<Rational> image(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      image[i * cols + j] = scale * (bound - plan.at(i, gy.reflect_index(j)));
    }
  }
  return TransportPlan(gx, gy, std::move(image));
}

ComplementIdentity cost_complement_identity(const SaturationPattern& pattern,
                                            const Grid& grid_x,
                                            const Grid& grid_y,
                                            const CostMatrix& cost) {
  if (cost.kind() != CostKind::NEG_DOT) {
    throw std::invalid_argument(
        "complement identity is specific to the bilinear cost");
  }
  if (pattern.rows != cost.rows() || pattern.cols != cost.cols() ||
      grid_x.num_cells() != cost.rows() || grid_y.num_cells() != cost.cols()) {
    throw std::invalid_argument("complement identity shape mismatch");
  }

  const Rational weight = grid_x.cell_volume() * grid_y.cell_volume();
  Rational saturated_sum = 0, complement_sum = 0;
  for (int i = 0; i < pattern.rows; ++i) {
    for (int j = 0; j < pattern.cols; ++j) {
      if (pattern.at(i, j) == CellLabel::SATURATED) {
        saturated_sum += cost.at(i, j) * weight;
      } else {
        complement_sum += cost.at(i, j) * weight;
      }
    }
  }

  ComplementIdentity identity;
  identity.lhs = saturated_sum + complement_sum;
  identity.rhs = -dot(center_of_mass(uniform_marginal(grid_x)),
                      center_of_mass(uniform_marginal(grid_y)));
  identity.holds = identity.lhs == identity.rhs;
  return identity;
}

ComplementIdentity cost_complement_identity(const TransportPlan& plan,
                                            const CostMatrix& cost,
                                            const CapacityMatrix& capacity) {
  return cost_complement_identity(saturation_pattern(plan, capacity),
                                  plan.grid_x(), plan.grid_y(), cost);
}

std::vector<Rational> center_of_mass(const DiscreteMarginal& marginal) {
  if (marginal.total_mass() == 0) {
    throw std::invalid_argument("center of mass of a zero marginal");
  }
  const Grid& grid = marginal.grid();
  std::vector<Rational> center(grid.dimension(), Rational(0));
  for (int cell = 0; cell < grid.num_cells(); ++cell) {
    const auto mid = grid.midpoint(cell);
    for (int axis = 0; axis < grid.dimension(); ++axis) {
      center[axis] += marginal.mass(cell) * mid[axis];
    }
  }
  for (auto& coordinate : center) coordinate /= marginal.total_mass();
  return center;
}

SymmetryReport verify_symmetric_optimality(
    const SolveResult& result, SymmetryTransform transform,
    const DiscreteMarginal& f, const DiscreteMarginal& g,
    const CostMatrix& cost, const CapacityMatrix& capacity,
    const std::optional<ConjugatePair>& pair) {
  const TransportPlan& plan = result.plan;
  const Grid& gx = plan.grid_x();
  const Grid& gy = plan.grid_y();

  SymmetryReport report;
  report.transform = transform;
  report.expected_cost = result.optimal_value;

  switch (transform) {
    case SymmetryTransform::TRANSPOSE: {
      if (!(f == g)) {
        throw std::invalid_argument("transpose symmetry needs equal marginals");
      }
      if (!cost.is_symmetric() || !capacity_symmetric(capacity)) {
        throw std::invalid_argument(
            "transpose symmetry needs symmetric cost and capacity");
      }
      const int n = plan.rows();
      std::vector<Rational> image(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) image[i * n + j] = plan.at(j, i);
      }
      TransportPlan transposed(gy, gx, std::move(image));
      report.image_feasibility = check_feasible(transposed, f, g, capacity);
      report.image_cost = total_cost(transposed, cost);
      break;
    }
    case SymmetryTransform::NEGATE: {
      if (gx.domain() != Domain::CENTERED || gy.domain() != Domain::CENTERED) {
        throw std::invalid_argument("negation symmetry needs centered grids");
      }
      if (cost.kind() != CostKind::NEG_DOT) {
        throw std::invalid_argument(
            "negation symmetry needs the bilinear cost");
      }
      if (!reflection_symmetric(f) || !reflection_symmetric(g) ||
          !capacity_reflection_symmetric(capacity, gx, gy)) {
        throw std::invalid_argument(
            "negation symmetry needs reflection-symmetric data");
      }
      std::vector<Rational> image(static_cast<size_t>(plan.rows()) *
                                  plan.cols());
      for (int i = 0; i < plan.rows(); ++i) {
        for (int j = 0; j < plan.cols(); ++j) {
          image[i * plan.cols() + j] =
              plan.at(gx.reflect_index(i), gy.reflect_index(j));
        }
      }
      TransportPlan negated(gx, gy, std::move(image));
      report.image_feasibility = check_feasible(negated, f, g, capacity);
      report.image_cost = total_cost(negated, cost);
      break;
    }
    case SymmetryTransform::CONJUGATE_REFLECT: {
      if (!pair) {
        throw std::invalid_argument(
            "conjugate reflection needs a conjugate pair");
      }
      if (cost.kind() != CostKind::NEG_DOT) {
        throw std::invalid_argument(
            "conjugate reflection needs the bilinear cost");
      }
      if (!(f == uniform_marginal(gx)) || !(g == uniform_marginal(gy))) {
        throw std::invalid_argument(
            "conjugate reflection needs uniform marginals");
      }
      TransportPlan image = conjugate_transform(plan, *pair, capacity);
      const CapacityMatrix capacity_q = build_capacity(gx, gy, pair->q);
      report.image_feasibility = check_feasible(image, f, g, capacity_q);
      report.image_cost = total_cost(image, cost);
      report.expected_cost = (pair->q / pair->p) * result.optimal_value;
      break;
    }
  }

  report.pass = report.image_feasibility.is_feasible &&
                report.image_cost == report.expected_cost;
  return report;
}

}  // namespace ccot
