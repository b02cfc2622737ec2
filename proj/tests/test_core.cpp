#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ccot/capacity.hpp"
#include "ccot/cost.hpp"
#include "ccot/grid.hpp"
#include "ccot/marginal.hpp"
#include "ccot/plan.hpp"
#include "ccot/symmetry.hpp"
#include "vertex_enumeration.hpp"

using namespace ccot;

namespace {

Rational R(long long num, long long den = 1) { return make_rational(num, den); }

TransportPlan plan_from(const Grid& gx, const Grid& gy,
                        std::vector<Rational> mass) {
  return TransportPlan(gx, gy, std::move(mass));
}

}  // namespace

TEST_CASE("rationals are canonical and reject zero denominators") {
  CHECK(make_rational(2, 4) == R(1, 2));
  CHECK(make_rational(1, -2) == R(-1, 2));
  CHECK(denominator(make_rational(1, -2)) == 2);
  CHECK(make_rational(-6, -4) == R(3, 2));
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);

  CHECK(parse_rational("3/9") == R(1, 3));
  CHECK(parse_rational("-5") == R(-5));
  CHECK(parse_rational("-3/6") == R(-1, 2));
  CHECK_THROWS_AS(parse_rational("7/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);

  CHECK(format_rational(R(-1, 16)) == "-1/16");
  CHECK(format_rational(R(4)) == "4");
  CHECK(to_double(R(-1, 16)) == doctest::Approx(-0.0625));
}

TEST_CASE("centered grids partition a unit box symmetrically around 0") {
  const Grid g2 = build_grid(1, 2, Domain::CENTERED);
  CHECK(g2.num_cells() == 2);
  CHECK(g2.cell_volume() == R(1, 2));
  CHECK(g2.axis_midpoint(0) == R(-1, 4));
  CHECK(g2.axis_midpoint(1) == R(1, 4));

  const Grid g4 = build_grid(1, 4, Domain::CENTERED);
  const std::vector<Rational> expected = {R(-3, 8), R(-1, 8), R(1, 8), R(3, 8)};
  for (int i = 0; i < 4; ++i) CHECK(g4.axis_midpoint(i) == expected[i]);

  // Midpoints are mirror images; reflect_index realizes the mirror.
  for (int i = 0; i < 4; ++i) {
    CHECK(g4.axis_midpoint(g4.reflect_index(i)) == -g4.axis_midpoint(i));
  }
}

TEST_CASE("unit grids start at 0") {
  const Grid g = build_grid(1, 2, Domain::UNIT);
  CHECK(g.axis_midpoint(0) == R(1, 4));
  CHECK(g.axis_midpoint(1) == R(3, 4));
  CHECK(g.cell_volume() == R(1, 2));
}

TEST_CASE("two-dimensional grids use row-major flat indices") {
  const Grid g = build_grid(2, 3, Domain::CENTERED);
  CHECK(g.num_cells() == 9);
  CHECK(g.cell_volume() == R(1, 9));

  // Last axis varies fastest.
  CHECK(g.flat_index({1, 2}) == 5);
  const auto mid = g.midpoint(5);
  REQUIRE(mid.size() == 2);
  CHECK(mid[0] == g.axis_midpoint(1));
  CHECK(mid[1] == g.axis_midpoint(2));
  CHECK(g.axis_midpoint(1) == R(0));
  CHECK(g.axis_midpoint(2) == R(1, 3));

  // flat_index and midpoint agree cell by cell, and reflection negates
  // every coordinate.
  for (int cell = 0; cell < g.num_cells(); ++cell) {
    const auto m = g.midpoint(cell);
    const auto r = g.midpoint(g.reflect_index(cell));
    for (int axis = 0; axis < 2; ++axis) CHECK(r[axis] == -m[axis]);
    CHECK(g.reflect_index(g.reflect_index(cell)) == cell);
  }

  // Total volume is the box volume.
  CHECK(Rational(g.num_cells()) * g.cell_volume() == R(1));
}

TEST_CASE("grid construction rejects bad shapes") {
  CHECK_THROWS_AS(build_grid(3, 2, Domain::CENTERED), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(0, 2, Domain::CENTERED), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1, 0, Domain::CENTERED), std::invalid_argument);
  CHECK_THROWS_AS(build_grid(1, -4, Domain::UNIT), std::invalid_argument);
}

TEST_CASE("uniform marginals carry the cell volume everywhere") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  const DiscreteMarginal f = uniform_marginal(g);
  CHECK(f.mass(0) == R(1, 2));
  CHECK(f.mass(1) == R(1, 2));
  CHECK(f.total_mass() == R(1));

  const DiscreteMarginal f4 = uniform_marginal(build_grid(1, 4, Domain::UNIT));
  for (int i = 0; i < 4; ++i) CHECK(f4.mass(i) == R(1, 4));

  const DiscreteMarginal f22 =
      uniform_marginal(build_grid(2, 2, Domain::CENTERED));
  CHECK(f22.size() == 4);
  for (int i = 0; i < 4; ++i) CHECK(f22.mass(i) == R(1, 4));
  CHECK(f22.total_mass() == R(1));
}

TEST_CASE("marginals reject negative masses and size mismatches") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  CHECK_THROWS_AS(DiscreteMarginal(g, {R(1, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(DiscreteMarginal(g, {R(-1, 2), R(3, 2)}),
                  std::invalid_argument);
}

TEST_CASE("bilinear and squared-distance costs on the two-cell grids") {
  const Grid gc = build_grid(1, 2, Domain::CENTERED);
  const CostMatrix neg = build_cost(gc, gc, CostKind::NEG_DOT);
  CHECK(neg.at(0, 0) == R(-1, 16));
  CHECK(neg.at(0, 1) == R(1, 16));
  CHECK(neg.at(1, 0) == R(1, 16));
  CHECK(neg.at(1, 1) == R(-1, 16));
  CHECK(neg.is_symmetric());
  CHECK(neg.kind() == CostKind::NEG_DOT);

  const CostMatrix sq = build_cost(gc, gc, CostKind::SQ_DIST);
  CHECK(sq.at(0, 0) == R(0));
  CHECK(sq.at(0, 1) == R(1, 4));
  CHECK(sq.at(1, 0) == R(1, 4));
  CHECK(sq.at(1, 1) == R(0));

  const Grid gu = build_grid(1, 2, Domain::UNIT);
  const CostMatrix negu = build_cost(gu, gu, CostKind::NEG_DOT);
  CHECK(negu.at(0, 0) == R(-1, 16));
  CHECK(negu.at(0, 1) == R(-3, 16));
  CHECK(negu.at(1, 0) == R(-3, 16));
  CHECK(negu.at(1, 1) == R(-9, 16));
}

TEST_CASE("cost construction wants matching dimensions") {
  const Grid g1 = build_grid(1, 2, Domain::CENTERED);
  const Grid g2 = build_grid(2, 2, Domain::CENTERED);
  CHECK_THROWS_AS(build_cost(g1, g2, CostKind::NEG_DOT),
                  std::invalid_argument);
  // Different resolutions along the same dimension are fine.
  const Grid g3 = build_grid(1, 3, Domain::CENTERED);
  const CostMatrix c = build_cost(g1, g3, CostKind::NEG_DOT);
  CHECK(c.rows() == 2);
  CHECK(c.cols() == 3);
  CHECK(c.at(0, 2) == -(R(-1, 4) * R(1, 3)));
}

TEST_CASE("custom costs keep their entries and flag their kind") {
  const CostMatrix c = custom_cost(1, 2, {R(5), R(-7, 3)});
  CHECK(c.kind() == CostKind::CUSTOM);
  CHECK(c.at(0, 1) == R(-7, 3));
  CHECK_FALSE(custom_cost(2, 2, {R(0), R(1), R(2), R(0)}).is_symmetric());
  CHECK_THROWS_AS(custom_cost(2, 2, {R(0)}), std::invalid_argument);
}

TEST_CASE("capacity bounds scale the pair volume by the density") {
  const Grid g2 = build_grid(1, 2, Domain::CENTERED);
  const CapacityMatrix u2 = build_capacity(g2, g2, R(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(u2.at(i, j) == R(1, 2));
  CHECK(u2.constant_density() == R(2));

  const Grid g4 = build_grid(1, 4, Domain::CENTERED);
  CHECK(build_capacity(g4, g4, R(3)).at(0, 0) == R(3, 16));
  CHECK(build_capacity(g4, g4, R(3, 2)).at(2, 1) == R(3, 32));

  CHECK_THROWS_AS(build_capacity(g2, g2, R(-1)), std::invalid_argument);

  const CapacityMatrix custom = custom_capacity(g2, g2, {R(2), R(0), R(0), R(2)});
  CHECK(custom.at(0, 0) == R(1, 2));
  CHECK(custom.at(0, 1) == R(0));
  CHECK_FALSE(custom.constant_density().has_value());
}

TEST_CASE("product and zero plans have the advertised masses") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  const DiscreteMarginal f = uniform_marginal(g);
  const TransportPlan prod = product_plan(f, f);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(prod.at(i, j) == R(1, 4));

  const TransportPlan zero = zero_plan(g, g);
  for (const auto& m : zero.mass()) CHECK(m == R(0));

  // Product of non-uniform marginals divides by the shared total.
  const DiscreteMarginal h(g, {R(1), R(1)});
  const TransportPlan prod2 = product_plan(h, h);
  CHECK(prod2.at(0, 1) == R(1, 2));
}

TEST_CASE("total cost is the exact mass-weighted sum") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  const CostMatrix neg = build_cost(g, g, CostKind::NEG_DOT);
  const DiscreteMarginal f = uniform_marginal(g);

  CHECK(total_cost(product_plan(f, f), neg) == R(0));

  const TransportPlan diag =
      plan_from(g, g, {R(1, 2), R(0), R(0), R(1, 2)});
  CHECK(total_cost(diag, neg) == R(-1, 16));

  const Grid gu = build_grid(1, 2, Domain::UNIT);
  const DiscreteMarginal fu = uniform_marginal(gu);
  CHECK(total_cost(product_plan(fu, fu), build_cost(gu, gu, CostKind::NEG_DOT)) ==
        R(-1, 4));

  const CostMatrix wrong = custom_cost(1, 1, {R(1)});
  CHECK_THROWS_AS(total_cost(diag, wrong), std::invalid_argument);
}

TEST_CASE("total cost is linear in the cost matrix") {
  const Grid g = build_grid(1, 3, Domain::UNIT);
  const DiscreteMarginal f = uniform_marginal(g);
  const TransportPlan plan = product_plan(f, f);
  const CostMatrix c1 = build_cost(g, g, CostKind::NEG_DOT);
  const CostMatrix c2 = build_cost(g, g, CostKind::SQ_DIST);

  const Rational alpha = R(3, 7), beta = R(-2, 5);
  std::vector<Rational> combo(c1.entries().size());
  for (size_t k = 0; k < combo.size(); ++k) {
    combo[k] = alpha * c1.entries()[k] + beta * c2.entries()[k];
  }
  const CostMatrix mixed = custom_cost(3, 3, std::move(combo));
  CHECK(total_cost(plan, mixed) ==
        alpha * total_cost(plan, c1) + beta * total_cost(plan, c2));
}

TEST_CASE("feasibility reports exact defects") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  const DiscreteMarginal f = uniform_marginal(g);

  // Density 1 admits exactly the product plan, fully saturated.
  const CapacityMatrix u1 = build_capacity(g, g, R(1));
  const auto ok = check_feasible(product_plan(f, f), f, f, u1);
  CHECK(ok.is_feasible);
  CHECK(ok.worst_row_defect == R(0));
  CHECK(ok.worst_col_defect == R(0));
  CHECK(ok.worst_bound_violation == R(0));

  // The diagonal plan holds 1/2 per cell against a bound of 1/4.
  const TransportPlan diag = plan_from(g, g, {R(1, 2), R(0), R(0), R(1, 2)});
  const auto bad = check_feasible(diag, f, f, u1);
  CHECK_FALSE(bad.is_feasible);
  CHECK(bad.worst_bound_violation == R(1, 4));
  CHECK(bad.worst_row_defect == R(0));

  // The zero plan misses every marginal by the cell mass.
  const auto empty = check_feasible(zero_plan(g, g), f, f, u1);
  CHECK_FALSE(empty.is_feasible);
  CHECK(empty.worst_row_defect == R(1, 2));
  CHECK(empty.worst_col_defect == R(1, 2));
  CHECK(empty.worst_bound_violation == R(0));
}

TEST_CASE("saturation labels split cells into empty, partial, saturated") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  const DiscreteMarginal f = uniform_marginal(g);

  const auto all_sat =
      saturation_pattern(product_plan(f, f), build_capacity(g, g, R(1)));
  CHECK(all_sat.saturated_count == 4);
  CHECK(all_sat.partial_count == 0);
  CHECK(all_sat.empty_count == 0);

  const CapacityMatrix u2 = build_capacity(g, g, R(2));
  const TransportPlan diag = plan_from(g, g, {R(1, 2), R(0), R(0), R(1, 2)});
  const auto split = saturation_pattern(diag, u2);
  CHECK(split.at(0, 0) == CellLabel::SATURATED);
  CHECK(split.at(0, 1) == CellLabel::EMPTY);
  CHECK(split.at(1, 1) == CellLabel::SATURATED);
  CHECK(split.saturated_count == 2);
  CHECK(split.empty_count == 2);

  const auto half = saturation_pattern(product_plan(f, f), u2);
  CHECK(half.partial_count == 4);

  // A zero bound with zero mass is empty, not saturated.
  const CapacityMatrix pinched = custom_capacity(g, g, {R(2), R(0), R(0), R(2)});
  const auto pinch = saturation_pattern(diag, pinched);
  CHECK(pinch.at(0, 1) == CellLabel::EMPTY);
  CHECK(pinch.saturated_count == 2);

  // The tolerance variant recovers exact labels at tol = 0 and absorbs
  // small perturbations otherwise.
  const auto exact_again = saturation_pattern_tol(diag, u2, R(0));
  CHECK(exact_again.labels == split.labels);
  const TransportPlan wiggle =
      plan_from(g, g, {R(1, 2) - R(1, 1000000000000LL), R(0), R(0), R(1, 2)});
  CHECK(saturation_pattern_tol(wiggle, u2, R(1, 1000000)).saturated_count == 2);
  CHECK(saturation_pattern_tol(wiggle, u2, R(0)).saturated_count == 1);
}

TEST_CASE("density-1 capacity prices the whole box at the product of centers") {
  // Summing c * u over all pairs with u the density-1 bounds equals
  // -<b(X), b(Y)> for the bilinear cost: each factor integrates to its
  // center of mass.
  struct Case {
    int dimension;
    Domain domain;
    int n;
  };
  for (const Case& c : {Case{1, Domain::CENTERED, 4}, Case{1, Domain::UNIT, 3},
                        Case{2, Domain::UNIT, 2}, Case{2, Domain::CENTERED, 3}}) {
    const Grid g = build_grid(c.dimension, c.n, c.domain);
    const CostMatrix cost = build_cost(g, g, CostKind::NEG_DOT);
    const CapacityMatrix u = build_capacity(g, g, R(1));
    Rational sum = 0;
    for (int i = 0; i < g.num_cells(); ++i)
      for (int j = 0; j < g.num_cells(); ++j) sum += cost.at(i, j) * u.at(i, j);

    const auto b = center_of_mass(uniform_marginal(g));
    Rational dot = 0;
    for (int axis = 0; axis < c.dimension; ++axis) dot += b[axis] * b[axis];
    CHECK(sum == -dot);
  }
}

TEST_CASE("adding row and column offsets shifts every plan cost equally") {
  struct Instance {
    Grid gx, gy;
    DiscreteMarginal f, g;
    CapacityMatrix u;
  };
  const Grid c2 = build_grid(1, 2, Domain::CENTERED);
  const Grid u3 = build_grid(1, 3, Domain::UNIT);
  std::vector<Instance> instances;
  instances.push_back({c2, c2, uniform_marginal(c2), uniform_marginal(c2),
                       build_capacity(c2, c2, R(2))});
  instances.push_back({u3, u3, uniform_marginal(u3), uniform_marginal(u3),
                       build_capacity(u3, u3, R(3, 2))});
  instances.push_back({c2, u3, uniform_marginal(c2), uniform_marginal(u3),
                       build_capacity(c2, u3, R(2))});
  instances.push_back({c2, c2,
                       DiscreteMarginal(c2, {R(1, 3), R(2, 3)}),
                       DiscreteMarginal(c2, {R(1, 4), R(3, 4)}),
                       build_capacity(c2, c2, R(3))});

  for (const auto& inst : instances) {
    const auto vertices = testing::enumerate_vertices(inst.f, inst.g, inst.u);
    REQUIRE(!vertices.empty());

    // c2 = c1 + a_i + b_j with c1 = -2<x,y>, a_i = x_i^2, b_j = y_j^2,
    // which lands exactly on |x - y|^2.
    const int rows = inst.f.size(), cols = inst.g.size();
    const CostMatrix sq = build_cost(inst.gx, inst.gy, CostKind::SQ_DIST);
    std::vector<Rational> doubled(static_cast<size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        doubled[i * cols + j] =
            R(-2) * inst.gx.axis_midpoint(i) * inst.gy.axis_midpoint(j);
    const CostMatrix c1 = custom_cost(rows, cols, std::move(doubled));

    Rational shift = 0;
    for (int i = 0; i < rows; ++i)
      shift += inst.gx.axis_midpoint(i) * inst.gx.axis_midpoint(i) *
               inst.f.mass(i);
    for (int j = 0; j < cols; ++j)
      shift += inst.gy.axis_midpoint(j) * inst.gy.axis_midpoint(j) *
               inst.g.mass(j);

    Rational best_sq = 0, best_c1 = 0;
    bool first = true;
    for (const auto& mass : vertices) {
      const TransportPlan plan(inst.gx, inst.gy, mass);
      const Rational cost_sq = total_cost(plan, sq);
      const Rational cost_c1 = total_cost(plan, c1);
      CHECK(cost_sq - cost_c1 == shift);  // identical shift on every plan
      if (first || cost_sq < best_sq) best_sq = cost_sq;
      if (first || cost_c1 < best_c1) best_c1 = cost_c1;
      first = false;
    }

    // The shift moves every cost by the same constant, so the minimizing
    // vertex sets coincide.
    for (const auto& mass : vertices) {
      const TransportPlan plan(inst.gx, inst.gy, mass);
      CHECK((total_cost(plan, sq) == best_sq) ==
            (total_cost(plan, c1) == best_c1));
    }
  }
}

TEST_CASE("plan construction validates shapes") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  CHECK_THROWS_AS(TransportPlan(g, g, {R(1)}), std::invalid_argument);
  CHECK_THROWS_AS(TransportPlan(g, g, {R(1), R(0), R(0), R(-1)}),
                  std::invalid_argument);
  const Grid g3 = build_grid(1, 3, Domain::CENTERED);
  const DiscreteMarginal f = uniform_marginal(g);
  const DiscreteMarginal h = uniform_marginal(g3);
  CHECK_THROWS_AS(
      check_feasible(product_plan(f, f), f, h, build_capacity(g, g, R(1))),
      std::invalid_argument);
}
