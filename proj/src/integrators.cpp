#include "frictpair/integrators.hpp"

#include <cmath>

#include "frictpair/errors.hpp"

namespace frictpair {

namespace {

constexpr long kMaxEventsPerStep = 10000;  // chattering guard
constexpr int kMaxBisection = 64;

State advanced(const State& s, const Derivative& d, double dt) {
  return {s.x1 + dt * d.dx1, s.v1 + dt * d.dv1, s.x2 + dt * d.dx2,
          s.v2 + dt * d.dv2};
}

// Smooth field of a fixed mode; identical for all model variants, which only
// differ in when they leave an arc.
struct FrozenField {
  const Params& p;
  const Forcing& u;
  Mode mode;

  Derivative operator()(double t, const State& s) const {
    return mode.is_stick() ? stick_field(p, s, u(t))
                           : slip_field(p, s, u(t), mode.direction());
  }
};

template <class F>
State rk4_advance(const F& f, double t, const State& s, double dt) {
  const Derivative k1 = f(t, s);
  const Derivative k2 = f(t + 0.5 * dt, advanced(s, k1, 0.5 * dt));
  const Derivative k3 = f(t + 0.5 * dt, advanced(s, k2, 0.5 * dt));
  const Derivative k4 = f(t + dt, advanced(s, k3, dt));
  const double w = dt / 6.0;
  return {s.x1 + w * (k1.dx1 + 2.0 * k2.dx1 + 2.0 * k3.dx1 + k4.dx1),
          s.v1 + w * (k1.dv1 + 2.0 * k2.dv1 + 2.0 * k3.dv1 + k4.dv1),
          s.x2 + w * (k1.dx2 + 2.0 * k2.dx2 + 2.0 * k3.dx2 + k4.dx2),
          s.v2 + w * (k1.dv2 + 2.0 * k2.dv2 + 2.0 * k3.dv2 + k4.dv2)};
}

// Switching function of the current mode: positive inside the smooth arc,
// negative once the arc must end. Slip arcs end at a zero of v1-v2, stick
// arcs when the stiction margin b/m2 - |common acceleration| is exhausted.
double mode_gate(const Params& p, const Forcing& u, Mode mode, double t,
                 const State& s) {
  if (mode.is_stick())
    return p.b / p.m2 - std::abs(stick_acceleration(p, s, u(t)));
  return mode.direction() * s.zdot();
}

}  // namespace

std::string to_string(EventKind k, int direction) {
  switch (k) {
    case EventKind::SlipOnset:
      return direction > 0 ? "slip_onset+" : "slip_onset-";
    case EventKind::StickOnset:
      return "stick_onset";
    case EventKind::DirectionReversal:
      return direction > 0 ? "reversal+" : "reversal-";
    case EventKind::RegionCross:
      return direction > 0 ? "cross_S+" : "cross_S-";
  }
  return "?";
}

EulerStep step_euler(ModelVariant variant, const Params& p, const Forcing& u,
                     const State& s, Mode mode, double t, double h) {
  if (!(h > 0.0)) throw ValidationError("h must be > 0");
  const Derivative d = rhs(variant, p, s, u(t), mode);
  State ns = advanced(s, d, h);
  if (!ns.finite())
    throw SimulationError("non-finite state after Euler step (instability)",
                          t + h);
  const double u_next = u(t + h);
  Mode nm = mode;
  double dp = 0.0;
  if (mode.is_stick()) {
    ns.v2 = ns.v1;  // hold the sliding surface exactly
    if (variant != ModelVariant::Simplified && breakaway_violated(p, ns, u_next))
      nm = Mode::slip(breakaway_direction(p, ns, u_next));
  } else if (sgn3(ns.zdot()) != mode.direction()) {
    // A sign change (or exact zero) of v1-v2 across the step stands in for
    // the zero-velocity trigger that fixed-step Euler almost never hits.
    if (variant == ModelVariant::Simplified || !breakaway_violated(p, ns, u_next)) {
      dp = p.m2 * (ns.v1 - ns.v2);
      ns.v2 = ns.v1;
      nm = Mode::stick();
    } else {
      nm = Mode::slip(breakaway_direction(p, ns, u_next));
    }
  }
  return {ns, nm, dp};
}

Rk4Step step_event_rk4(ModelVariant variant, const Params& p, const Forcing& u,
                       const State& s, Mode mode, double t, double h,
                       double event_tol_t) {
  if (!(h > 0.0)) throw ValidationError("h must be > 0");
  if (!(event_tol_t > 0.0)) throw ValidationError("event_tol_t must be > 0");

  Rk4Step out{s, mode, {}};
  const double t_target = t + h;
  double t_cur = t;
  long transitions = 0;

  while (true) {
    const double dt = t_target - t_cur;
    if (!(dt > 0.0)) break;

    const FrozenField field{p, u, out.mode};
    // The Simplified variant never leaves stick, so there is nothing to watch.
    const bool watch =
        !(out.mode.is_stick() && variant == ModelVariant::Simplified);

    State trial = rk4_advance(field, t_cur, out.state, dt);
    if (!trial.finite())
      throw SimulationError("non-finite state in RK4 step (instability)",
                            t_cur);

    const double g_end =
        watch ? mode_gate(p, u, out.mode, t_cur + dt, trial) : 1.0;
    if (!(g_end < 0.0)) {
      // No boundary reached in this interval.
      out.state = trial;
      if (out.mode.is_stick()) out.state.v2 = out.state.v1;
      t_cur = t_target;
      break;
    }

    // The arc ends inside (t_cur, t_cur+dt]. Bracket the first crossing.
    auto probe = [&](double tau) {
      return mode_gate(p, u, out.mode, t_cur + tau,
                       rk4_advance(field, t_cur, out.state, tau));
    };
    double tau_a = 0.0;
    double tau_b = dt;
    bool have_inside = mode_gate(p, u, out.mode, t_cur, out.state) > 0.0;
    for (int i = 1; i < 16 && !have_inside; ++i) {
      const double tau = dt * i / 16.0;
      const double g = probe(tau);
      if (g > 0.0) {
        have_inside = true;
        tau_a = tau;
      } else if (g < 0.0) {
        tau_b = tau;
        break;
      }
    }
    if (have_inside && tau_b == dt) {
      // Walk forward from tau_a to keep the first sign change inside [a, b].
      for (int i = 1; i < 16; ++i) {
        const double tau = dt * i / 16.0;
        if (tau <= tau_a) continue;
        const double g = probe(tau);
        if (g > 0.0) {
          tau_a = tau;
        } else {
          if (g < 0.0) tau_b = tau;
          break;
        }
      }
    }
    if (!have_inside) {
      // The gate never becomes positive: shrink toward the arc start.
      double tau = tau_b;
      for (int i = 0; i < 60 && !have_inside; ++i) {
        tau *= 0.5;
        const double g = probe(tau);
        if (g > 0.0) {
          have_inside = true;
          tau_a = tau;
        } else if (g < 0.0) {
          tau_b = tau;
        }
      }
    }

    if (have_inside) {
      int iters = 0;
      while (tau_b - tau_a > event_tol_t) {
        if (++iters > kMaxBisection)
          throw SimulationError(
              "event bisection failed to collapse (degenerate tangential "
              "crossing)",
              t_cur);
        const double mid = 0.5 * (tau_a + tau_b);
        if (probe(mid) < 0.0)
          tau_b = mid;
        else
          tau_a = mid;
      }
    }
    // Land on the post-crossing side so the transition test fires.
    State s_ev = rk4_advance(field, t_cur, out.state, tau_b);
    const double t_ev = t_cur + tau_b;
    const double u_ev = u(t_ev);

    if (out.mode.is_stick()) {
      const int dir = breakaway_direction(p, s_ev, u_ev);
      if (dir == 0)
        throw SimulationError("degenerate breakaway with zero net force", t_ev);
      out.events.push_back({t_ev, EventKind::SlipOnset, dir, s_ev, 0.0});
      out.mode = Mode::slip(dir);
    } else {
      const int d = out.mode.direction();
      if (variant == ModelVariant::Simplified ||
          !breakaway_violated(p, s_ev, u_ev)) {
        const double dp = p.m2 * (s_ev.v1 - s_ev.v2);
        s_ev.v2 = s_ev.v1;
        out.events.push_back({t_ev, EventKind::StickOnset, 0, s_ev, dp});
        out.mode = Mode::stick();
      } else {
        const int nd = breakaway_direction(p, s_ev, u_ev);
        out.events.push_back({t_ev, EventKind::RegionCross, d, s_ev, 0.0});
        out.events.push_back({t_ev, EventKind::DirectionReversal, nd, s_ev, 0.0});
        out.mode = Mode::slip(nd);
      }
    }
    out.state = s_ev;
    t_cur = t_ev;
    if (++transitions > kMaxEventsPerStep)
      throw SimulationError(
          "chattering: more than 10^4 mode transitions within one step", t_cur);
  }
  return out;
}

void validate_scenario(const Scenario& sc) {
  require_valid(sc.params);
  if (!sc.initial.finite())
    throw ValidationError("initial state must be finite");
  if (!(std::isfinite(sc.t_end) && sc.t_end >= 0.0))
    throw ValidationError("t_end must be >= 0");
  if (!(std::isfinite(sc.integrator.h) && sc.integrator.h > 0.0))
    throw ValidationError("h must be > 0");
  if (sc.integrator.kind == IntegratorKind::EventRk4 &&
      !(sc.integrator.event_tol_t > 0.0 &&
        sc.integrator.event_tol_t < sc.integrator.h))
    throw ValidationError("event_tol_t must lie in (0, h)");
  if (sc.record_every < 1)
    throw ValidationError("record_every must be >= 1");
  if (sc.initial_mode) {
    const double zd = sc.initial.zdot();
    if (sc.initial_mode->is_stick()) {
      if (std::abs(zd) > kStickBandVelocity)
        throw ValidationError(
            "initial mode stick requires v1 = v2 within the stick band");
    } else if (sgn3(zd) == -sc.initial_mode->direction() &&
               std::abs(zd) > kStickBandVelocity) {
      throw ValidationError(
          "initial slip mode contradicts the sign of v1 - v2");
    }
  }
}

namespace {

Mode mode_after(const Event& e) {
  switch (e.kind) {
    case EventKind::SlipOnset:
    case EventKind::DirectionReversal:
      return Mode::slip(e.direction);
    case EventKind::StickOnset:
      return Mode::stick();
    case EventKind::RegionCross:
      return Mode::slip(-e.direction);
  }
  return Mode::stick();
}

void push_row(Trajectory& traj, const Params& p, double t, const State& s,
              Mode mode) {
  Sample row{t, s, mode, energy(p, s)};
  if (!traj.samples.empty() && !(t > traj.samples.back().t)) {
    if (t == traj.samples.back().t) traj.samples.back() = row;
    return;
  }
  traj.samples.push_back(row);
}

}  // namespace

Trajectory simulate(const Scenario& sc) {
  validate_scenario(sc);
  Trajectory traj;
  traj.scenario = sc;
  const Params& p = sc.params;
  const Forcing& u = sc.forcing;
  const double h = sc.integrator.h;

  State s = sc.initial;
  Mode mode;
  if (sc.initial_mode) {
    mode = *sc.initial_mode;
  } else {
    mode = resolve_auto_mode(sc.variant, p, s, u(0.0), kStickBandVelocity);
    // Breakaway resolved from within the stick band is a genuine slip onset.
    if (mode.is_slip() && std::abs(s.zdot()) <= kStickBandVelocity)
      traj.events.push_back({0.0, EventKind::SlipOnset, mode.direction(), s, 0.0});
  }
  traj.samples.push_back({0.0, s, mode, energy(p, s)});
  if (sc.t_end <= 0.0) return traj;

  long n = static_cast<long>(std::ceil(sc.t_end / h - 1e-12));
  if (n < 1) n = 1;
  traj.samples.reserve(
      static_cast<size_t>(n / sc.record_every + 16));

  try {
    for (long k = 0; k < n; ++k) {
      const double t0 = k * h;
      const double t1 = (k + 1 == n) ? sc.t_end : (k + 1) * h;
      const double dt = t1 - t0;
      if (!(dt > 0.0)) continue;

      if (sc.integrator.kind == IntegratorKind::Euler) {
        const Mode before = mode;
        EulerStep st = step_euler(sc.variant, p, u, s, mode, t0, dt);
        s = st.state;
        mode = st.mode;
        if (!(mode == before)) {
          Event e{t1, EventKind::StickOnset, 0, s, 0.0};
          if (before.is_stick()) {
            e.kind = EventKind::SlipOnset;
            e.direction = mode.direction();
          } else if (mode.is_stick()) {
            e.kind = EventKind::StickOnset;
            e.projection_dp = st.projection_dp;
          } else {
            traj.events.push_back(
                {t1, EventKind::RegionCross, before.direction(), s, 0.0});
            e.kind = EventKind::DirectionReversal;
            e.direction = mode.direction();
          }
          traj.events.push_back(e);
          push_row(traj, p, t1, s, mode);
        }
      } else {
        Rk4Step st = step_event_rk4(sc.variant, p, u, s, mode, t0, dt,
                                    sc.integrator.event_tol_t);
        s = st.state;
        mode = st.mode;
        for (const Event& e : st.events) {
          traj.events.push_back(e);
          push_row(traj, p, e.time, e.state, mode_after(e));
        }
      }

      if ((k + 1) % sc.record_every == 0 || k + 1 == n)
        push_row(traj, p, t1, s, mode);
    }
  } catch (SimulationError&) {
    throw;
  } catch (const std::exception& ex) {
    throw SimulationError(ex.what(), traj.samples.back().t);
  }
  return traj;
}

}  // namespace frictpair
