#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ccot/config.hpp"
#include "ccot/rational.hpp"

namespace ccot {

struct AuditOutcome {
  std::string name;
  std::string status;              // "pass" | "fail" | "skipped"
  bool certifying = true;          // false when a tolerance was involved
  std::string detail;              // skip reason or context note
  std::optional<Rational> defect;  // exact deviation; 0 when clean
};

struct DensityRun {
  Rational density;
  std::string status;  // "ok" | "infeasible"
  std::optional<Rational> value;
  std::string solver;
  std::int64_t iterations = 0;
  bool is_vertex = false;
  long long empty_cells = 0;
  long long partial_cells = 0;
  long long saturated_cells = 0;
  long long partial_bound = 0;  // rows + cols - 1
  std::string plan_file;        // file names relative to out_dir
  std::string saturation_file;
  std::vector<AuditOutcome> audits;
  double seconds = 0.0;  // wall time; printed, never serialized
};

struct RunReport {
  ExperimentConfig config;
  std::vector<DensityRun> runs;
  int exit_code = 0;  // 0 clean; 2 some density infeasible; 3 audit failed
};

// Process exit code for a finished sweep: 3 when any audit failed, else 2
// when any density was infeasible, else 0.
int exit_code_for(const std::vector<DensityRun>& runs);

// Solves every density in the sweep (each one isolated: an infeasible
// density is reported and the sweep continues), runs the configured audits,
// and writes plan_<density>.csv, saturation_<density>.pgm, and report.json
// into config.out_dir.
RunReport run(const ExperimentConfig& config);

// Stable key order and exact rationals; timings are deliberately left out
// so identical configs produce byte-identical files.
void write_report_json(const RunReport& report,
                       const std::filesystem::path& path);

}  // namespace ccot
