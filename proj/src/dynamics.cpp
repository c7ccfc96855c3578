#include "frictpair/dynamics.hpp"

#include <cmath>

#include "frictpair/errors.hpp"

namespace frictpair {

namespace {

// Net tangential force on body 1 short of friction: u - a1 v1 - a2 x1.
double net_force(const Params& p, const State& s, double u_val) {
  return u_val - p.a1 * s.v1 - p.a2 * s.x1;
}

}  // namespace

std::string to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::ClosedForm:
      return "closed_form";
    case ModelVariant::Simplified:
      return "simplified";
    case ModelVariant::Filippov:
      return "filippov";
  }
  return "?";
}

double stick_acceleration(const Params& p, const State& s, double u_val) {
  return net_force(p, s, u_val) / (p.m1 + p.m2);
}

bool breakaway_violated(const Params& p, const State& s, double u_val) {
  return std::abs(stick_acceleration(p, s, u_val)) > p.b / p.m2;
}

int breakaway_direction(const Params& p, const State& s, double u_val) {
  return sgn3(net_force(p, s, u_val));
}

Derivative slip_field(const Params& p, const State& s, double u_val,
                      int direction) {
  return {s.v1, (net_force(p, s, u_val) - p.b * direction) / p.m1, s.v2,
          p.b / p.m2 * direction};
}

Derivative stick_field(const Params& p, const State& s, double u_val) {
  const double acc = stick_acceleration(p, s, u_val);
  return {s.v1, acc, s.v2, acc};
}

Derivative rhs(ModelVariant variant, const Params& p, const State& s,
               double u_val, Mode mode) {
  const int sg = sgn3(s.zdot());
  switch (variant) {
    case ModelVariant::ClosedForm: {
      if (sg != 0) return slip_field(p, s, u_val, sg);
      // At zero relative velocity the trial acceleration is the lumped-mass
      // one; the stiction factor decides how much of it body 2 follows.
      const double trial = stick_acceleration(p, s, u_val);
      const double factor =
          0.5 * (1.0 - sgn3(std::abs(trial) - p.b / p.m2));
      return {s.v1, trial, s.v2, trial * factor};
    }
    case ModelVariant::Simplified: {
      if (sg != 0) return slip_field(p, s, u_val, sg);
      return stick_field(p, s, u_val);
    }
    case ModelVariant::Filippov: {
      if (mode.is_stick()) {
        if (std::abs(s.zdot()) > kStickBandVelocity)
          throw ValidationError(
              "filippov rhs: stick mode requires v1 = v2 within the stick band");
        return stick_field(p, s, u_val);
      }
      const int d = mode.direction();
      if (sg == -d && std::abs(s.zdot()) > kStickBandVelocity)
        throw ValidationError(
            "filippov rhs: slip mode contradicts the sign of v1 - v2");
      return slip_field(p, s, u_val, d);
    }
  }
  return {};
}

Region filippov_region(const Params&, const State& s, double tol_v) {
  const double zd = s.zdot();
  if (std::abs(zd) <= tol_v) return Region::OnS;
  return zd > 0.0 ? Region::OmegaPlus : Region::OmegaMinus;
}

Mode mode_transition(const Params& p, const State& s, Mode mode, double u_val,
                     double tol_v) {
  if (mode.is_slip() && std::abs(s.zdot()) > tol_v) return mode;
  if (breakaway_violated(p, s, u_val))
    return Mode::slip(breakaway_direction(p, s, u_val));
  return Mode::stick();
}

Mode mode_transition_variant(ModelVariant variant, const Params& p,
                             const State& s, Mode mode, double u_val,
                             double tol_v) {
  if (variant != ModelVariant::Simplified)
    return mode_transition(p, s, mode, u_val, tol_v);
  if (mode.is_stick()) return mode;
  return std::abs(s.zdot()) <= tol_v ? Mode::stick() : mode;
}

Mode resolve_auto_mode(ModelVariant variant, const Params& p, const State& s,
                       double u_val, double tol_v) {
  const double zd = s.zdot();
  if (std::abs(zd) > tol_v) return Mode::slip(sgn3(zd));
  if (variant == ModelVariant::Simplified) return Mode::stick();
  if (breakaway_violated(p, s, u_val))
    return Mode::slip(breakaway_direction(p, s, u_val));
  return Mode::stick();
}

}  // namespace frictpair
