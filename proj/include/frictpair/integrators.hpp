#pragma once

#include <optional>
#include <vector>

#include "frictpair/core.hpp"
#include "frictpair/dynamics.hpp"

namespace frictpair {

enum class IntegratorKind { Euler, EventRk4 };

struct IntegratorSpec {
  IntegratorKind kind = IntegratorKind::EventRk4;
  double h = 1e-3;           // step size [s], > 0
  double event_tol_t = 1e-9; // event location tolerance [s]; EventRk4 only

  static IntegratorSpec euler(double h) {
    return {IntegratorKind::Euler, h, 0.0};
  }
  static IntegratorSpec event_rk4(double h, double event_tol_t = 1e-9) {
    return {IntegratorKind::EventRk4, h, event_tol_t};
  }

  friend bool operator==(const IntegratorSpec&, const IntegratorSpec&) = default;
};

/// A complete, serializable description of one simulation run.
struct Scenario {
  Params params;
  Forcing forcing;
  ModelVariant variant = ModelVariant::ClosedForm;
  IntegratorSpec integrator;
  State initial;
  std::optional<Mode> initial_mode;  // nullopt: resolve from the state at t=0
  double t_end = 1.0;                // [s], >= 0
  long record_every = 1;             // sample decimation, >= 1

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

enum class EventKind {
  SlipOnset,          // stick -> slip
  StickOnset,         // slip -> stick
  DirectionReversal,  // slip(d) -> slip(-d)
  RegionCross         // transversal crossing of the switching surface
};

std::string to_string(EventKind k, int direction);

struct Event {
  double time = 0.0;
  EventKind kind = EventKind::StickOnset;
  /// SlipOnset / DirectionReversal: outgoing slip direction.
  /// RegionCross: +1 when crossing through S+ (arriving from v1>v2),
  /// -1 through S-. Unused (0) for StickOnset.
  int direction = 0;
  /// State at the event; for StickOnset this is after the velocity of body 2
  /// has been projected onto body 1.
  State state;
  /// StickOnset only: momentum change m2*(v1 - v2_pre) absorbed by the
  /// projection, bounded by m2 times the stick band.
  double projection_dp = 0.0;

  friend bool operator==(const Event&, const Event&) = default;
};

struct Sample {
  double t = 0.0;
  State state;
  Mode mode;
  double energy = 0.0;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Time series plus event log plus a provenance copy of the scenario.
/// Samples are strictly increasing in time, start at t=0 with the initial
/// state, and include a row at every located event in addition to the
/// decimated grid rows, so the CSV form preserves exact event times.
struct Trajectory {
  std::vector<Sample> samples;
  std::vector<Event> events;
  Scenario scenario;
};

struct EulerStep {
  State state;
  Mode mode;
  /// Momentum absorbed by the velocity projection when the step entered
  /// stick; 0 otherwise.
  double projection_dp = 0.0;
};

/// One explicit forward-Euler step s' = s + h * rhs(variant, ...), then the
/// mode update at s'. A sign change of v1-v2 across the step stands in for
/// the zero-velocity trigger of the transition rule.
EulerStep step_euler(ModelVariant variant, const Params& p, const Forcing& u,
                     const State& s, Mode mode, double t, double h);

struct Rk4Step {
  State state;
  Mode mode;
  std::vector<Event> events;  // located crossings, time-ordered
};

/// One classical 4-stage Runge-Kutta step on the smooth field of the current
/// mode. When the switching function of the mode (v1-v2 for slip, the
/// stiction margin for stick) changes sign within the step, the crossing is
/// located by bisection to within event_tol_t, the transition is applied
/// there, and stepping resumes for the remainder of the interval.
Rk4Step step_event_rk4(ModelVariant variant, const Params& p, const Forcing& u,
                       const State& s, Mode mode, double t, double h,
                       double event_tol_t);

/// Integrates the scenario from t=0 to t_end. Deterministic: identical
/// scenarios produce bit-identical trajectories.
Trajectory simulate(const Scenario& sc);

/// Throws ValidationError if the scenario violates any invariant.
void validate_scenario(const Scenario& sc);

}  // namespace frictpair
