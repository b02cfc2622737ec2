#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ccot/config.hpp"
#include "ccot/io.hpp"
#include "ccot/runner.hpp"

namespace {

void print_summary(const ccot::RunReport& report) {
  for (const auto& row : report.runs) {
    const std::string density = ccot::format_rational(row.density);
    if (row.status != "ok") {
      std::printf("density %s: %s (%.3f s)\n", density.c_str(),
                  row.status.c_str(), row.seconds);
      continue;
    }
    std::printf(
        "density %s: value %s (~%.12g), cells %lld/%lld/%lld "
        "empty/partial/saturated, %lld pivots, %.3f s\n",
        density.c_str(), ccot::format_rational(*row.value).c_str(),
        ccot::to_double(*row.value), row.empty_cells, row.partial_cells,
        row.saturated_cells, static_cast<long long>(row.iterations),
        row.seconds);
    for (const auto& audit : row.audits) {
      if (audit.detail.empty()) {
        std::printf("  audit %-10s %s\n", audit.name.c_str(),
                    audit.status.c_str());
      } else {
        std::printf("  audit %-10s %s (%s)\n", audit.name.c_str(),
                    audit.status.c_str(), audit.detail.c_str());
      }
    }
  }
  std::printf("report: %s\n",
              (report.config.out_dir / "report.json").string().c_str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact solver and structure audits for capacity-constrained "
      "transportation problems"};
  std::string config_path;
  std::string out_dir;
  std::string audits;
  std::string mode;
  app.add_option("--config", config_path,
                 "experiment description (JSON file)")
      ->required();
  app.add_option("--out-dir", out_dir, "output directory (overrides config)");
  app.add_option("--audits", audits,
                 "comma-separated audit list (overrides config)");
  app.add_option("--mode", mode, "exact or float64 (overrides config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    // Keep CLI11's messages but pin the usage-error exit code to 1
    // (--help still exits 0).
    return app.exit(error) == 0 ? 0 : 1;
  }

  try {
    ccot::ExperimentConfig config = ccot::load_config(config_path);
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (!audits.empty()) config.audits = ccot::parse_audit_list(audits);
    if (!mode.empty()) {
      if (mode == "exact") {
        config.mode = ccot::ArithmeticMode::EXACT;
      } else if (mode == "float64") {
        config.mode = ccot::ArithmeticMode::FLOAT64;
      } else {
        std::fprintf(stderr, "error: --mode must be exact or float64\n");
        return 1;
      }
    }

    const ccot::RunReport report = ccot::run(config);
    print_summary(report);
    return report.exit_code;
  } catch (const ccot::ConfigError& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
}
