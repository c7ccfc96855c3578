#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "frictpair/integrators.hpp"

namespace frictpair {

/// Per-run output options carried by the scenario file next to the physics.
struct OutputOptions {
  bool svg = false;
};

struct ScenarioFile {
  Scenario scenario;
  OutputOptions output;
};

/// Parses a scenario document. Unknown keys are rejected at every level;
/// physical fields are validated. Throws ParseError on malformed documents
/// and ValidationError on invariant violations.
ScenarioFile parse_scenario_json(const nlohmann::ordered_json& j);
ScenarioFile load_scenario_file(const std::string& path);

/// JSON form of a scenario (inverse of parse, used by sweep expansion).
nlohmann::ordered_json scenario_json(const ScenarioFile& sf);

/// A sweep document: a base scenario plus swept fields, each addressed by a
/// dotted path into the scenario document with an explicit value list.
struct SweepSpec {
  nlohmann::ordered_json base;
  std::vector<std::pair<std::string, std::vector<nlohmann::ordered_json>>> axes;
};

SweepSpec load_sweep_file(const std::string& path);

struct SweepCombo {
  std::string label;  // e.g. "params.b=0.2"
  std::vector<std::pair<std::string, nlohmann::ordered_json>> values;
  ScenarioFile file;
};

/// Cartesian expansion of the sweep axes (bounded to 10^4 combinations).
std::vector<SweepCombo> expand_sweep(const SweepSpec& spec);

/// Params-only document (either a bare params object or any document with a
/// "params" member). Used by the classify command.
Params load_params_file(const std::string& path);

}  // namespace frictpair
