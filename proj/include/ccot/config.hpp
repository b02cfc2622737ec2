#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccot/cost.hpp"
#include "ccot/grid.hpp"
#include "ccot/rational.hpp"

namespace ccot {

enum class ArithmeticMode { EXACT, FLOAT64 };

// Audit names accepted in configs and on the command line.
const std::vector<std::string>& known_audits();

// One experiment: a grid family, a cost, a capacity sweep, and which
// audits to run on every solved density.
struct ExperimentConfig {
  int dimension = 1;
  int n = 4;
  Domain domain = Domain::CENTERED;
  CostKind cost = CostKind::NEG_DOT;
  // Non-empty capacity sweep; defaults to {3, 3/2}, the mirror-image pair.
  std::vector<Rational> densities = {make_rational(3), make_rational(3, 2)};
  // Explicit per-cell weights; empty means uniform marginals.
  std::vector<Rational> f_weights;
  std::vector<Rational> g_weights;
  ArithmeticMode mode = ArithmeticMode::EXACT;
  std::vector<std::string> audits = known_audits();
  std::filesystem::path out_dir = "out";

  bool uniform_marginals() const { return f_weights.empty(); }
};

// Malformed or invalid configuration; the message names the offending
// field or the parse position.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parses and validates a JSON experiment description. `origin` only labels
// error messages.
ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin);

ExperimentConfig load_config(const std::filesystem::path& path);

// Splits a comma-separated audit list (the --audits flag), validating names
// against known_audits and dropping duplicates.
std::vector<std::string> parse_audit_list(const std::string& text);

}  // namespace ccot
