#include "ccot/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "ccot/exchange.hpp"
#include "ccot/io.hpp"
#include "ccot/solver.hpp"
#include "ccot/symmetry.hpp"

namespace ccot {

namespace {

using nlohmann::ordered_json;

// Absolute tolerance for every float64-mode audit.
const Rational& float_tolerance() {
  static const Rational tol = make_rational(1, 1000000000);
  return tol;
}

struct SolvedDensity {
  std::optional<CapacityMatrix> capacity;
  std::optional<SolveResult> result;
  std::optional<SaturationPattern> pattern;
  double seconds = 0.0;
};

SolveResult reconstruct_float_result(const Grid& grid,
                                     const CostMatrix& cost,
                                     const FloatSolveResult& raw) {
  std::vector<Rational> mass;
  mass.reserve(raw.mass.size());
  for (const double value : raw.mass) {
    // Negative dust from roundoff would be rejected by TransportPlan.
    mass.emplace_back(value <= 0.0 ? Rational(0) : Rational(value));
  }
  TransportPlan plan(grid, grid, std::move(mass));
  Rational value = total_cost(plan, cost);
  return SolveResult{std::move(plan), std::move(value), false, raw.iterations,
                     "simplex_float64"};
}

Rational abs_rational(const Rational& r) { return r < 0 ? -r : r; }

// Largest feasibility defect of a symmetry image plus its value mismatch.
Rational symmetry_defect(const SymmetryReport& report) {
  Rational defect = abs_rational(report.image_cost - report.expected_cost);
  defect = std::max(defect, report.image_feasibility.worst_row_defect);
  defect = std::max(defect, report.image_feasibility.worst_col_defect);
  defect = std::max(defect, report.image_feasibility.worst_bound_violation);
  return defect;
}

class AuditRunner {
 public:
  AuditRunner(const ExperimentConfig& config, const DiscreteMarginal& f,
              const DiscreteMarginal& g, const CostMatrix& cost,
              const std::vector<SolvedDensity>& solved)
      : config_(config), f_(f), g_(g), cost_(cost), solved_(solved) {}

  AuditOutcome run_audit(const std::string& name, size_t index) const {
    AuditOutcome outcome;
    outcome.name = name;
    outcome.certifying = exact_mode();
    if (name == "vertex") {
      vertex(index, outcome);
    } else if (name == "exchange") {
      exchange(index, outcome);
    } else if (name == "complement") {
      complement(index, outcome);
    } else if (name == "transpose") {
      symmetry(index, SymmetryTransform::TRANSPOSE, outcome);
    } else if (name == "negate") {
      symmetry(index, SymmetryTransform::NEGATE, outcome);
    } else if (name == "conjugate") {
      conjugate(index, outcome);
    } else {
      outcome.status = "skipped";
      outcome.detail = "unknown audit";
    }
    return outcome;
  }

 private:
  bool exact_mode() const { return config_.mode == ArithmeticMode::EXACT; }

  const Rational& tolerance() const {
    static const Rational zero(0);
    return exact_mode() ? zero : float_tolerance();
  }

  void conclude(AuditOutcome& outcome, const Rational& defect) const {
    outcome.defect = defect;
    outcome.status = abs_rational(defect) <= tolerance() ? "pass" : "fail";
  }

  void vertex(size_t index, AuditOutcome& outcome) const {
    const auto& pattern = *solved_[index].pattern;
    const long long bound = pattern.rows + pattern.cols - 1;
    outcome.detail = std::to_string(pattern.partial_count) +
                     " partial cells, bound " + std::to_string(bound);
    conclude(outcome, Rational(std::max(0LL, pattern.partial_count - bound)));
  }

  void exchange(size_t index, AuditOutcome& outcome) const {
    const auto& solved = solved_[index];
    const ExchangeScan scan =
        scan_exchanges(solved.result->plan, cost_, *solved.capacity);
    outcome.detail = (scan.exhaustive ? "exhaustive over " : "sampled ") +
                     std::to_string(scan.quads_scanned) + " quadruples";
    outcome.certifying = exact_mode() && scan.exhaustive;
    // A clean plan never prices an exchange below zero.
    conclude(outcome, std::min(Rational(0), scan.min_delta));
  }

  void complement(size_t index, AuditOutcome& outcome) const {
    if (cost_.kind() != CostKind::NEG_DOT) {
      outcome.status = "skipped";
      outcome.detail = "needs the bilinear cost";
      return;
    }
    const auto& solved = solved_[index];
    const ComplementIdentity identity = cost_complement_identity(
        *solved.pattern, f_.grid(), g_.grid(), cost_);
    conclude(outcome, identity.lhs - identity.rhs);
  }

  void symmetry(size_t index, SymmetryTransform transform,
                AuditOutcome& outcome) const {
    const auto& solved = solved_[index];
    try {
      const SymmetryReport report = verify_symmetric_optimality(
          *solved.result, transform, f_, g_, cost_, *solved.capacity);
      conclude(outcome, symmetry_defect(report));
    } catch (const std::invalid_argument& reason) {
      outcome.status = "skipped";
      outcome.detail = reason.what();
    }
  }

  void conjugate(size_t index, AuditOutcome& outcome) const {
    const Rational& density = config_.densities[index];
    if (density <= 1) {
      outcome.status = "skipped";
      outcome.detail = "needs density > 1";
      return;
    }
    const auto& solved = solved_[index];
    const ConjugatePair pair{density};
    Rational defect;
    try {
      const SymmetryReport report = verify_symmetric_optimality(
          *solved.result, SymmetryTransform::CONJUGATE_REFLECT, f_, g_, cost_,
          *solved.capacity, pair);
      defect = symmetry_defect(report);
    } catch (const std::invalid_argument& reason) {
      outcome.status = "skipped";
      outcome.detail = reason.what();
      return;
    }

    // When the conjugate density was also solved in this sweep, pin the
    // value identity value(q) = (q/p) * value(p) as well.
    bool paired = false;
    for (size_t other = 0; other < config_.densities.size(); ++other) {
      if (config_.densities[other] != pair.q || !solved_[other].result) {
        continue;
      }
      paired = true;
      const Rational expected =
          (pair.q / pair.p) * solved.result->optimal_value;
      defect = std::max(defect, abs_rational(solved_[other].result->optimal_value -
                                             expected));
      break;
    }
    outcome.detail = paired
                         ? "conjugate density " + density_slug(pair.q) +
                               " solved in sweep; value identity checked"
                         : "conjugate density " + density_slug(pair.q) +
                               " not in sweep; transform identity only";
    conclude(outcome, defect);
  }

  const ExperimentConfig& config_;
  const DiscreteMarginal& f_;
  const DiscreteMarginal& g_;
  const CostMatrix& cost_;
  const std::vector<SolvedDensity>& solved_;
};

ordered_json rational_json(const Rational& r) {
  static const BigInt kMin(std::numeric_limits<long long>::min());
  static const BigInt kMax(std::numeric_limits<long long>::max());
  ordered_json j;
  const BigInt num = numerator(r);
  const BigInt den = denominator(r);
  if (num >= kMin && num <= kMax) {
    j["num"] = num.convert_to<long long>();
  } else {
    j["num"] = num.str();  // beyond 64 bits (float64 dyadic values)
  }
  if (den <= kMax) {
    j["den"] = den.convert_to<long long>();
  } else {
    j["den"] = den.str();
  }
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", to_double(r));
  j["approx"] = std::strtod(buffer, nullptr);
  return j;
}

ordered_json audit_json(const AuditOutcome& audit) {
  ordered_json j;
  j["audit"] = audit.name;
  if (audit.status == "skipped") {
    j["skipped"] = true;
    j["detail"] = audit.detail;
    return j;
  }
  j["pass"] = audit.status == "pass";
  if (!audit.certifying) j["certifying"] = false;
  if (!audit.detail.empty()) j["detail"] = audit.detail;
  if (audit.defect) j["defect"] = rational_json(*audit.defect);
  return j;
}

ordered_json config_json(const ExperimentConfig& config) {
  ordered_json j;
  j["dimension"] = config.dimension;
  j["n"] = config.n;
  j["domain"] = config.domain == Domain::CENTERED ? "centered" : "unit";
  j["cost"] = config.cost == CostKind::NEG_DOT ? "neg_dot" : "sq_dist";
  j["mode"] = config.mode == ArithmeticMode::EXACT ? "exact" : "float64";
  j["marginals"] = config.uniform_marginals() ? "uniform" : "explicit";
  j["audits"] = config.audits;
  ordered_json densities = ordered_json::array();
  for (const auto& density : config.densities) {
    densities.push_back(rational_json(density));
  }
  j["densities"] = std::move(densities);
  return j;
}

}  // namespace

RunReport run(const ExperimentConfig& config) {
  const Grid grid = build_grid(config.dimension, config.n, config.domain);
  const CostMatrix cost = build_cost(grid, grid, config.cost);
  const DiscreteMarginal f = config.uniform_marginals()
                                 ? uniform_marginal(grid)
                                 : DiscreteMarginal(grid, config.f_weights);
  const DiscreteMarginal g = config.uniform_marginals()
                                 ? uniform_marginal(grid)
                                 : DiscreteMarginal(grid, config.g_weights);
  std::filesystem::create_directories(config.out_dir);

  // Solve the whole sweep first so cross-density audits (the conjugate
  // value identity) can see every result.
  std::vector<SolvedDensity> solved(config.densities.size());
  for (size_t k = 0; k < config.densities.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    CapacityMatrix capacity = build_capacity(grid, grid, config.densities[k]);
    try {
      if (config.mode == ArithmeticMode::EXACT) {
        SolveResult result = solve(f, g, cost, capacity);
        solved[k].pattern = saturation_pattern(result.plan, capacity);
        solved[k].result = std::move(result);
      } else {
        SolveResult result = reconstruct_float_result(
            grid, cost, solve_float64(f, g, cost, capacity));
        solved[k].pattern =
            saturation_pattern_tol(result.plan, capacity, float_tolerance());
        solved[k].result = std::move(result);
      }
    } catch (const InfeasibleError&) {
      // Reported below; the rest of the sweep is unaffected.
    }
    solved[k].capacity = std::move(capacity);
    solved[k].seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
  }

  RunReport report;
  report.config = config;
  const AuditRunner audits(config, f, g, cost, solved);

  for (size_t k = 0; k < config.densities.size(); ++k) {
    DensityRun row;
    row.density = config.densities[k];
    row.seconds = solved[k].seconds;

    if (!solved[k].result) {
      row.status = "infeasible";
      for (const auto& name : config.audits) {
        AuditOutcome outcome;
        outcome.name = name;
        outcome.status = "skipped";
        outcome.detail = "density infeasible";
        row.audits.push_back(std::move(outcome));
      }
      report.runs.push_back(std::move(row));
      continue;
    }

    const SolveResult& result = *solved[k].result;
    const SaturationPattern& pattern = *solved[k].pattern;
    row.status = "ok";
    row.value = result.optimal_value;
    row.solver = result.solver;
    row.iterations = result.iterations;
    row.is_vertex = result.is_vertex;
    row.empty_cells = pattern.empty_count;
    row.partial_cells = pattern.partial_count;
    row.saturated_cells = pattern.saturated_count;
    row.partial_bound = pattern.rows + pattern.cols - 1;

    const std::string slug = density_slug(row.density);
    row.plan_file = "plan_" + slug + ".csv";
    row.saturation_file = "saturation_" + slug + ".pgm";
    write_plan_csv(result.plan, *solved[k].capacity,
                   config.out_dir / row.plan_file);
    write_saturation_pgm(pattern, config.out_dir / row.saturation_file);

    for (const auto& name : config.audits) {
      row.audits.push_back(audits.run_audit(name, k));
    }
    report.runs.push_back(std::move(row));
  }

  report.exit_code = exit_code_for(report.runs);
  write_report_json(report, config.out_dir / "report.json");
  return report;
}

int exit_code_for(const std::vector<DensityRun>& runs) {
  bool any_audit_failed = false;
  bool any_infeasible = false;
  for (const auto& row : runs) {
    any_infeasible |= row.status == "infeasible";
    for (const auto& audit : row.audits) {
      any_audit_failed |= audit.status == "fail";
    }
  }
  return any_audit_failed ? 3 : (any_infeasible ? 2 : 0);
}

void write_report_json(const RunReport& report,
                       const std::filesystem::path& path) {
  ordered_json j;
  j["config"] = config_json(report.config);
  ordered_json runs = ordered_json::array();
  for (const auto& row : report.runs) {
    ordered_json r;
    r["density"] = rational_json(row.density);
    r["status"] = row.status;
    if (row.status == "ok") {
      r["value"] = rational_json(*row.value);
      r["solver"] = row.solver;
      r["iterations"] = row.iterations;
      r["is_vertex"] = row.is_vertex;
      r["cells"] = ordered_json{{"empty", row.empty_cells},
                                {"partial", row.partial_cells},
                                {"saturated", row.saturated_cells}};
      r["partial_bound"] = row.partial_bound;
      r["files"] = ordered_json{{"plan", row.plan_file},
                                {"saturation", row.saturation_file}};
    }
    ordered_json audit_rows = ordered_json::array();
    for (const auto& audit : row.audits) audit_rows.push_back(audit_json(audit));
    r["audits"] = std::move(audit_rows);
    runs.push_back(std::move(r));
  }
  j["runs"] = std::move(runs);
  j["exit_code"] = report.exit_code;

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << '\n';
  if (!out.flush()) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

}  // namespace ccot
