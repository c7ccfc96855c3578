#pragma once

#include "frictpair/core.hpp"

namespace frictpair {

/// The three right-hand-side formulations of the same mechanical system.
///
///  - ClosedForm: the full switched equations, sign factors evaluated
///    literally from the state, including the acceleration-dependent
///    stiction factor that lets stick break away.
///  - Simplified: identical except the acceleration-dependent factor is
///    omitted; once sticking, the bodies never separate.
///  - Filippov: piecewise-smooth fields on the half-spaces v1>v2 / v1<v2
///    with an explicit sliding field on the switching surface, dispatched
///    on a discrete Mode.
enum class ModelVariant { ClosedForm, Simplified, Filippov };

std::string to_string(ModelVariant v);

/// Time-derivatives of the State fields.
struct Derivative {
  double dx1 = 0.0;  // [m/s]
  double dv1 = 0.0;  // [m/s^2]
  double dx2 = 0.0;  // [m/s]
  double dv2 = 0.0;  // [m/s^2]

  friend bool operator==(const Derivative&, const Derivative&) = default;
};

/// Velocity half-width of the stick band. The exact zero of the signum is
/// measure-zero under floating-point stepping, so slip->stick triggers on
/// |v1-v2| <= this band (or on a detected sign change for fixed-step Euler).
inline constexpr double kStickBandVelocity = 1e-9;  // [m/s]

/// Common acceleration of both bodies in stick: (u - a1 v1 - a2 x1)/(m1+m2).
double stick_acceleration(const Params& p, const State& s, double u_val);

/// True when stick cannot be sustained: |stick_acceleration| > b/m2, i.e.
/// the friction force needed to drag body 2 along exceeds the Coulomb bound.
/// Meaningful for states with v1 ~ v2.
bool breakaway_violated(const Params& p, const State& s, double u_val);

/// Sign the relative velocity acquires when stick breaks: the direction of
/// the net tangential force on body 1, -sgn3(a2 x1 + a1 v1 - u).
int breakaway_direction(const Params& p, const State& s, double u_val);

/// Smooth slip-regime field for a fixed direction d = sgn(v1-v2):
///   m1 dv1 = u - a1 v1 - a2 x1 - b d,   m2 dv2 = b d.
Derivative slip_field(const Params& p, const State& s, double u_val, int direction);

/// Smooth stick-regime (sliding) field: dv1 = dv2 = stick_acceleration.
Derivative stick_field(const Params& p, const State& s, double u_val);

/// Right-hand side of the selected model variant. ClosedForm and Simplified
/// ignore `mode` (their sign factors encode the switching); Filippov
/// dispatches on it and throws ValidationError when the mode contradicts the
/// sign of v1-v2 beyond the stick band.
Derivative rhs(ModelVariant variant, const Params& p, const State& s,
               double u_val, Mode mode);

/// Half-space classification relative to the switching surface {v1 = v2}.
enum class Region { OmegaPlus, OmegaMinus, OnS };

/// OnS iff |v1-v2| <= tol_v; otherwise the sign of v1-v2 picks the half-space.
Region filippov_region(const Params& p, const State& s, double tol_v);

/// Discrete stick-slip transition rule at a state with known current mode:
///   Stick      -> Slip(breakaway direction)  iff breakaway is violated
///   Slip(d)    -> Stick                      iff |v1-v2| <= tol_v and not violated
///   Slip(d)    -> Slip(-d)                   iff |v1-v2| <= tol_v and violated
/// otherwise unchanged. On a transversal crossing the breakaway direction
/// always equals -d, which keeps the rule idempotent.
Mode mode_transition(const Params& p, const State& s, Mode mode, double u_val,
                     double tol_v);

/// Variant-aware transition: the Simplified model enters stick at any
/// relative-velocity zero and never leaves it; the others follow
/// mode_transition.
Mode mode_transition_variant(ModelVariant variant, const Params& p,
                             const State& s, Mode mode, double u_val,
                             double tol_v);

/// Resolves an unspecified initial mode at t = 0 from the state alone.
Mode resolve_auto_mode(ModelVariant variant, const Params& p, const State& s,
                       double u_val, double tol_v);

}  // namespace frictpair
