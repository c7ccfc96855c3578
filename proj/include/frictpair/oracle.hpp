#pragma once

#include "frictpair/integrators.hpp"

namespace frictpair {
namespace oracle {

/// One closed-form piece of a free-system trajectory (a1 = 0, u = 0).
///
/// Stick: x1(t) = amp_c cos(w(t-t0)) + amp_s sin(w(t-t0)), w^2 = a2/(m1+m2),
///        x2 = x1 - z0, v2 = v1.
/// Slip:  x1(t) = center + amp_c cos(w(t-t0)) + amp_s sin(w(t-t0)),
///        w^2 = a2/m1, center = -dir b/a2, and body 2 moves under the
///        constant acceleration dir b/m2.
struct Arc {
  enum class Kind { Stick, Slip };
  Kind kind = Kind::Stick;
  int direction = 0;  // slip only
  double t_start = 0.0;
  double t_end = 0.0;  // +infinity for a terminal stick arc
  double omega = 0.0;
  double center = 0.0;
  double amp_c = 0.0;
  double amp_s = 0.0;
  double z0 = 0.0;    // stick: constant x1 - x2
  double x2_0 = 0.0;  // slip: body-2 initial position
  double v2_0 = 0.0;  // slip: body-2 initial velocity
  double accel2 = 0.0;  // slip: dir * b / m2

  bool infinite() const;
  State eval(double t) const;
};

/// Closed-form stick arc from a state with v1 = v2. Ends at the first
/// breakaway instant, i.e. |x1| = b(m1+m2)/(a2 m2) crossed outward, or never
/// when the oscillation amplitude satisfies A w^2 <= b/m2. Also describes the
/// permanent-stick motion of the simplified model, which is why states
/// outside the stiction strip are accepted. Requires a1 = 0.
Arc analytic_stick_arc(const Params& p, const State& s0, double t0);

/// Closed-form slip arc with fixed direction. Ends at the first root of
/// v1(t) - v2(t) = 0, located by bracketing on a grid of one twentieth of the
/// harmonic period followed by bisection to 1e-12 s. Requires a1 = 0.
Arc analytic_slip_arc(const Params& p, const State& s0, int direction,
                      double t0);

/// Semi-analytic reference trajectory: chains stick and slip arcs with exact
/// state handoff until t_end (or an infinite stick arc), sampled on the
/// scenario's grid with events at the arc boundaries. Refuses viscous or
/// forced scenarios and the Simplified variant.
Trajectory reference_trajectory(const Scenario& sc);

}  // namespace oracle
}  // namespace frictpair
