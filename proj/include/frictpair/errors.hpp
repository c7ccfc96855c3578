#pragma once

#include <stdexcept>
#include <string>

namespace frictpair {

// Error categories; the CLI maps each to a distinct exit code
// (parse=1, validation=2, integration=3, schema=4, insufficient data=5).

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulationError : std::runtime_error {
  SimulationError(const std::string& what, double t)
      : std::runtime_error(what), time(t) {}
  double time = 0.0;  // simulation time at which the failure occurred
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace frictpair
