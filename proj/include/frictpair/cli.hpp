#pragma once

#include <string>

namespace frictpair {
namespace cli {

// Exit codes shared by all commands.
inline constexpr int kOk = 0;
inline constexpr int kExitParse = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIntegration = 3;
inline constexpr int kExitSchema = 4;
inline constexpr int kExitInsufficientData = 5;

struct RunOptions {
  std::string scenario_path;
  std::string out_dir = ".";
  bool svg = false;  // force SVG emission regardless of the scenario file
};

/// Simulates one scenario and writes trajectory.csv, events.csv,
/// summary.json and (optionally) the phase-portrait SVGs into out_dir.
int cmd_run(const RunOptions& opt);

struct SweepOptions {
  std::string sweep_path;
  std::string out_dir = ".";
  int jobs = 0;  // 0: hardware concurrency
  bool svg = false;
};

/// Runs every sweep combination (in parallel), one output bundle per
/// combination plus an index.csv; outputs are independent of the
/// parallelism. Per-combination failures are recorded in the index; the
/// exit code is nonzero only when every combination fails.
int cmd_sweep(const SweepOptions& opt);

/// Prints the sliding-region geometry of the scenario's parameters as JSON.
int cmd_geometry(const std::string& scenario_path);

struct ClassifyOptions {
  std::string csv_path;
  std::string params_path;
};

/// Re-reads a trajectory CSV, re-verifies its derived columns and prints the
/// outcome classification as JSON.
int cmd_classify(const ClassifyOptions& opt);

}  // namespace cli
}  // namespace frictpair
