#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ccot/solver.hpp"
#include "vertex_enumeration.hpp"

using namespace ccot;

namespace {

Rational R(long long num, long long den = 1) { return make_rational(num, den); }

struct Instance {
  Grid grid;
  DiscreteMarginal f;
  CostMatrix cost;
  CapacityMatrix capacity;
};

Instance uniform_neg_dot(int n, const Rational& density,
                         Domain domain = Domain::CENTERED) {
  const Grid g = build_grid(1, n, domain);
  return {g, uniform_marginal(g), build_cost(g, g, CostKind::NEG_DOT),
          build_capacity(g, g, density)};
}

long long strictly_inside_count(const TransportPlan& plan,
                                const CapacityMatrix& capacity) {
  long long count = 0;
  for (int i = 0; i < plan.rows(); ++i) {
    for (int j = 0; j < plan.cols(); ++j) {
      if (plan.at(i, j) > 0 && plan.at(i, j) < capacity.at(i, j)) ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("feasibility is decided exactly") {
  const auto inst = uniform_neg_dot(2, R(1));
  CHECK(feasibility_exists(inst.f, inst.f, inst.capacity));

  // Total capacity 1/2 cannot carry unit mass.
  const auto tight = uniform_neg_dot(2, R(1, 2));
  CHECK_FALSE(feasibility_exists(tight.f, tight.f, tight.capacity));

  // A diagonal-only capacity still routes the uniform marginals.
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  const CapacityMatrix diag = custom_capacity(g, g, {R(2), R(0), R(0), R(2)});
  CHECK(feasibility_exists(uniform_marginal(g), uniform_marginal(g), diag));

  // ... but not if one row's outlets are too small.
  const CapacityMatrix pinched =
      custom_capacity(g, g, {R(1, 2), R(0), R(2), R(2)});
  CHECK_FALSE(
      feasibility_exists(uniform_marginal(g), uniform_marginal(g), pinched));
}

TEST_CASE("density 1 forces the product plan") {
  const auto inst = uniform_neg_dot(2, R(1));
  const auto result = solve(inst.f, inst.f, inst.cost, inst.capacity);
  CHECK(result.optimal_value == R(0));
  for (const auto& m : result.plan.mass()) CHECK(m == R(1, 4));
  CHECK(result.is_vertex);
  CHECK(result.solver == "simplex");

  const auto crowd = check_feasible(result.plan, inst.f, inst.f, inst.capacity);
  CHECK(crowd.is_feasible);
}

TEST_CASE("known optima on small centered grids") {
  const auto n2d2 = uniform_neg_dot(2, R(2));
  CHECK(solve(n2d2.f, n2d2.f, n2d2.cost, n2d2.capacity).optimal_value ==
        R(-1, 16));

  const auto n4d2 = uniform_neg_dot(4, R(2));
  CHECK(solve(n4d2.f, n4d2.f, n4d2.cost, n4d2.capacity).optimal_value ==
        R(-1, 16));

  // Slack regime: density >= n leaves the bounds inactive and the mass
  // rides the monotone diagonal.
  const auto n4d4 = uniform_neg_dot(4, R(4));
  CHECK(solve(n4d4.f, n4d4.f, n4d4.cost, n4d4.capacity).optimal_value ==
        R(-5, 64));

  const auto unit = uniform_neg_dot(2, R(1), Domain::UNIT);
  CHECK(solve(unit.f, unit.f, unit.cost, unit.capacity).optimal_value ==
        R(-1, 4));
}

TEST_CASE("solver rejects unbalanced and infeasible instances") {
  const Grid g = build_grid(1, 2, Domain::CENTERED);
  const DiscreteMarginal f = uniform_marginal(g);
  const DiscreteMarginal heavy(g, {R(1), R(1)});
  const CostMatrix cost = build_cost(g, g, CostKind::NEG_DOT);
  const CapacityMatrix u = build_capacity(g, g, R(2));
  CHECK_THROWS_AS(solve(f, heavy, cost, u), UnbalancedError);
  CHECK_THROWS_AS(brute_force_solve(f, heavy, cost, u), UnbalancedError);

  const CapacityMatrix small = build_capacity(g, g, R(1, 2));
  CHECK_THROWS_AS(solve(f, f, cost, small), InfeasibleError);
  CHECK_THROWS_AS(brute_force_solve(f, f, cost, small), InfeasibleError);
}

TEST_CASE("brute-force oracle matches spot values and guards its size") {
  const auto inst = uniform_neg_dot(2, R(2));
  const auto oracle = brute_force_solve(inst.f, inst.f, inst.cost, inst.capacity);
  CHECK(oracle.optimal_value == R(-1, 16));
  CHECK(oracle.solver == "exchange_oracle");
  CHECK(check_feasible(oracle.plan, inst.f, inst.f, inst.capacity).is_feasible);

  const auto unit = uniform_neg_dot(2, R(1), Domain::UNIT);
  CHECK(brute_force_solve(unit.f, unit.f, unit.cost, unit.capacity)
            .optimal_value == R(-1, 4));

  const Grid g7 = build_grid(1, 7, Domain::CENTERED);
  const Grid g6 = build_grid(1, 6, Domain::CENTERED);
  CHECK_THROWS_AS(brute_force_solve(uniform_marginal(g7), uniform_marginal(g6),
                                    build_cost(g7, g6, CostKind::NEG_DOT),
                                    build_capacity(g7, g6, R(2))),
                  InstanceTooLargeError);
}

TEST_CASE("simplex and exchange oracle agree across a small sweep") {
  const std::vector<Rational> densities = {R(1), R(3, 2), R(2), R(3)};
  for (int n = 2; n <= 4; ++n) {
    for (const auto& density : densities) {
      const auto inst = uniform_neg_dot(n, density);
      const auto fast = solve(inst.f, inst.f, inst.cost, inst.capacity);
      const auto slow =
          brute_force_solve(inst.f, inst.f, inst.cost, inst.capacity);
      CAPTURE(n);
      CAPTURE(format_rational(density));
      CHECK(fast.optimal_value == slow.optimal_value);
      CHECK(total_cost(fast.plan, inst.cost) == fast.optimal_value);
      CHECK(total_cost(slow.plan, inst.cost) == slow.optimal_value);
      CHECK(check_feasible(fast.plan, inst.f, inst.f, inst.capacity).is_feasible);
    }
  }

  // Same agreement away from the uniform bilinear home turf.
  const Grid g3 = build_grid(1, 3, Domain::UNIT);
  const DiscreteMarginal f(g3, {R(1, 2), R(1, 3), R(1, 6)});
  const DiscreteMarginal g(g3, {R(1, 6), R(1, 3), R(1, 2)});
  const CostMatrix sq = build_cost(g3, g3, CostKind::SQ_DIST);
  const CapacityMatrix u = build_capacity(g3, g3, R(3));
  CHECK(solve(f, g, sq, u).optimal_value ==
        brute_force_solve(f, g, sq, u).optimal_value);
}

TEST_CASE("solver optimum equals the minimum over enumerated vertices") {
  const Grid g3 = build_grid(1, 3, Domain::CENTERED);
  const DiscreteMarginal f = uniform_marginal(g3);
  const CostMatrix cost = build_cost(g3, g3, CostKind::NEG_DOT);

  for (const auto& density : {R(3, 2), R(2), R(3)}) {
    const CapacityMatrix u = build_capacity(g3, g3, density);
    const auto result = solve(f, f, cost, u);
    const auto vertices = testing::enumerate_vertices(f, f, u);
    REQUIRE(!vertices.empty());

    Rational best = total_cost(TransportPlan(g3, g3, vertices[0]), cost);
    for (const auto& mass : vertices) {
      best = std::min(best, total_cost(TransportPlan(g3, g3, mass), cost));
    }
    CHECK(result.optimal_value == best);

    // A basic optimal solution is itself a vertex of the polytope.
    CHECK(std::find(vertices.begin(), vertices.end(), result.plan.mass()) !=
          vertices.end());
  }
}

TEST_CASE("returned plans are vertices: few strictly interior cells") {
  for (int n : {3, 5, 8}) {
    for (const auto& density : {R(3, 2), R(2), R(3)}) {
      const auto inst = uniform_neg_dot(n, density);
      const auto result = solve(inst.f, inst.f, inst.cost, inst.capacity);
      CHECK(result.is_vertex);
      CHECK(strictly_inside_count(result.plan, inst.capacity) <= 2 * n - 1);
    }
  }
}

TEST_CASE("optimal value is monotone in the capacity density") {
  Rational previous;
  bool first = true;
  for (const auto& density : {R(1), R(3, 2), R(2), R(3), R(4), R(6)}) {
    const auto inst = uniform_neg_dot(4, density);
    const auto value = solve(inst.f, inst.f, inst.cost, inst.capacity).optimal_value;
    if (!first) CHECK(value <= previous);
    previous = value;
    first = false;
  }
}

TEST_CASE("rescaling the cost rescales the value and keeps the plan") {
  const auto inst = uniform_neg_dot(4, R(2));
  const auto base = solve(inst.f, inst.f, inst.cost, inst.capacity);

  const Rational factor = R(3, 7);
  std::vector<Rational> scaled = inst.cost.entries();
  for (auto& c : scaled) c *= factor;
  const CostMatrix scaled_cost = custom_cost(4, 4, std::move(scaled));
  const auto again = solve(inst.f, inst.f, scaled_cost, inst.capacity);

  CHECK(again.optimal_value == factor * base.optimal_value);
  CHECK(again.plan == base.plan);  // pivoting is scale-invariant
}

TEST_CASE("solving is deterministic") {
  const auto inst = uniform_neg_dot(6, R(3, 2));
  const auto a = solve(inst.f, inst.f, inst.cost, inst.capacity);
  const auto b = solve(inst.f, inst.f, inst.cost, inst.capacity);
  CHECK(a.plan == b.plan);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("float64 path lands within tolerance of the exact optimum") {
  const auto inst = uniform_neg_dot(8, R(2));
  const auto exact = solve(inst.f, inst.f, inst.cost, inst.capacity);
  const auto approx = solve_float64(inst.f, inst.f, inst.cost, inst.capacity);

  CHECK(std::abs(approx.value - to_double(exact.optimal_value)) <= 1e-9);
  REQUIRE(approx.mass.size() == inst.cost.entries().size());
  for (size_t k = 0; k < approx.mass.size(); ++k) {
    CHECK(approx.mass[k] >= -1e-9);
    CHECK(approx.mass[k] <=
          to_double(inst.capacity.mass_bounds()[k]) + 1e-9);
  }
}
