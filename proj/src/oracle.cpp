#include "frictpair/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "frictpair/errors.hpp"

namespace frictpair {
namespace oracle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kRootTol = 1e-12;  // [s]

void require_free_system(const Params& p) {
  if (p.a1 != 0.0)
    throw ValidationError("oracle requires a1 = 0 (free system only)");
}

// Smallest angle of the family gamma + 2*pi*k at or after theta0.
double first_angle_at_or_after(double gamma, double theta0) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double k = std::ceil((theta0 - gamma) / two_pi - 1e-12);
  double th = gamma + k * two_pi;
  while (th < theta0 - 1e-12) th += two_pi;
  return th;
}

}  // namespace

bool Arc::infinite() const { return !(t_end < kInf); }

State Arc::eval(double t) const {
  const double tau = t - t_start;
  const double c = std::cos(omega * tau);
  const double s = std::sin(omega * tau);
  const double x1 = center + amp_c * c + amp_s * s;
  const double v1 = omega * (amp_s * c - amp_c * s);
  if (kind == Kind::Stick) return {x1, v1, x1 - z0, v1};
  const double x2 = x2_0 + v2_0 * tau + 0.5 * accel2 * tau * tau;
  const double v2 = v2_0 + accel2 * tau;
  return {x1, v1, x2, v2};
}

Arc analytic_stick_arc(const Params& p, const State& s0, double t0) {
  require_valid(p);
  require_free_system(p);
  if (std::abs(s0.zdot()) > kStickBandVelocity)
    throw ValidationError("stick arc requires v1 = v2");

  Arc arc;
  arc.kind = Arc::Kind::Stick;
  arc.t_start = t0;
  arc.omega = std::sqrt(p.a2 / (p.m1 + p.m2));
  arc.amp_c = s0.x1;
  arc.amp_s = s0.v1 / arc.omega;
  arc.z0 = s0.x1 - s0.x2;

  const double amp = std::hypot(arc.amp_c, arc.amp_s);
  if (amp * arc.omega * arc.omega <= p.b / p.m2) {
    arc.t_end = kInf;  // oscillation never reaches the breakaway level
    return arc;
  }
  // x1 = A cos(theta) with theta = w tau - phi; breakaway at |x1| = x_star
  // crossed outward, which happens on the families theta = -alpha and
  // theta = beta (mod 2 pi).
  const double x_star = p.b * (p.m1 + p.m2) / (p.a2 * p.m2);
  const double ratio = std::min(1.0, x_star / amp);
  const double alpha = std::acos(ratio);
  const double beta = std::acos(-ratio);
  const double phi = std::atan2(arc.amp_s, arc.amp_c);
  const double theta0 = -phi;
  const double th =
      std::min(first_angle_at_or_after(-alpha, theta0),
               first_angle_at_or_after(beta, theta0));
  arc.t_end = t0 + std::max(0.0, (th - theta0) / arc.omega);
  return arc;
}

Arc analytic_slip_arc(const Params& p, const State& s0, int direction,
                      double t0) {
  require_valid(p);
  require_free_system(p);
  if (direction != 1 && direction != -1)
    throw ValidationError("slip direction must be +1 or -1");
  if (sgn3(s0.zdot()) == -direction &&
      std::abs(s0.zdot()) > kStickBandVelocity)
    throw ValidationError("slip arc direction contradicts the state");

  Arc arc;
  arc.kind = Arc::Kind::Slip;
  arc.direction = direction;
  arc.t_start = t0;
  arc.omega = std::sqrt(p.a2 / p.m1);
  arc.center = -direction * p.b / p.a2;
  arc.amp_c = s0.x1 - arc.center;
  arc.amp_s = s0.v1 / arc.omega;
  arc.x2_0 = s0.x2;
  arc.v2_0 = s0.v2;
  arc.accel2 = direction * p.b / p.m2;

  const auto zdot = [&](double tau) {
    const double c = std::cos(arc.omega * tau);
    const double s = std::sin(arc.omega * tau);
    const double v1 = arc.omega * (arc.amp_s * c - arc.amp_c * s);
    return v1 - (arc.v2_0 + arc.accel2 * tau);
  };

  const double period = 2.0 * std::numbers::pi / arc.omega;
  const double cell = period / 20.0;
  // Establish a point strictly inside the arc (zdot of the arc's sign); the
  // start itself may sit on the surface after a breakaway handoff.
  double tau_inside = -1.0;
  double probe = cell;
  for (int i = 0; i < 60; ++i) {
    if (sgn3(zdot(probe)) == direction) {
      tau_inside = probe;
      break;
    }
    probe *= 0.5;
  }
  if (tau_inside < 0.0)
    throw SimulationError("slip arc never acquires its direction", t0);

  // March until the relative velocity returns to zero.
  double lo = tau_inside;
  double hi = -1.0;
  for (double tau = std::ceil(tau_inside / cell) * cell; tau <= 10.0 * period;
       tau += cell) {
    if (tau <= lo) continue;
    if (sgn3(zdot(tau)) == direction) {
      lo = tau;
    } else {
      hi = tau;
      break;
    }
  }
  if (hi < 0.0)
    throw SimulationError("no slip-arc end within 10 harmonic periods", t0);
  while (hi - lo > kRootTol) {
    const double mid = 0.5 * (lo + hi);
    if (sgn3(zdot(mid)) == direction)
      lo = mid;
    else
      hi = mid;
  }
  arc.t_end = t0 + hi;
  return arc;
}

namespace {

Mode arc_mode(const Arc& a) {
  return a.kind == Arc::Kind::Stick ? Mode::stick() : Mode::slip(a.direction);
}

void push_row(Trajectory& traj, const Params& p, double t, const State& s,
              Mode mode) {
  if (!traj.samples.empty() && !(t > traj.samples.back().t)) return;
  traj.samples.push_back({t, s, mode, energy(p, s)});
}

struct BoundaryRow {
  double t;
  State state;
  Mode mode;
};

}  // namespace

Trajectory reference_trajectory(const Scenario& sc) {
  validate_scenario(sc);
  require_free_system(sc.params);
  if (!sc.forcing.is_zero())
    throw ValidationError("oracle requires zero forcing");
  if (sc.variant == ModelVariant::Simplified)
    throw ValidationError("oracle covers the closed-form and Filippov variants");

  const Params& p = sc.params;
  Trajectory traj;
  traj.scenario = sc;

  State s = sc.initial;
  Mode mode;
  if (sc.initial_mode) {
    mode = *sc.initial_mode;
  } else {
    mode = resolve_auto_mode(sc.variant, p, s, 0.0, kStickBandVelocity);
    if (mode.is_slip() && std::abs(s.zdot()) <= kStickBandVelocity)
      traj.events.push_back({0.0, EventKind::SlipOnset, mode.direction(), s, 0.0});
  }
  if (mode.is_stick()) s.v2 = s.v1;

  // Build the arc chain over [0, t_end], remembering the exact handoff state
  // at every boundary.
  std::vector<Arc> arcs;
  std::vector<BoundaryRow> boundaries;
  double t_cur = 0.0;
  State s_cur = s;
  Mode m_cur = mode;
  constexpr long kMaxArcs = 10'000'000;
  while (t_cur < sc.t_end) {
    Arc arc = m_cur.is_stick()
                  ? analytic_stick_arc(p, s_cur, t_cur)
                  : analytic_slip_arc(p, s_cur, m_cur.direction(), t_cur);
    arcs.push_back(arc);
    if (arc.infinite() || arc.t_end >= sc.t_end) break;
    if (static_cast<long>(arcs.size()) > kMaxArcs)
      throw SimulationError("arc chain did not reach the horizon", t_cur);

    State s_end = arc.eval(arc.t_end);
    if (arc.kind == Arc::Kind::Stick) {
      const int dir = breakaway_direction(p, s_end, 0.0);
      if (dir == 0)
        throw SimulationError("degenerate breakaway with zero net force",
                              arc.t_end);
      traj.events.push_back({arc.t_end, EventKind::SlipOnset, dir, s_end, 0.0});
      m_cur = Mode::slip(dir);
    } else if (!breakaway_violated(p, s_end, 0.0)) {
      const double dp = p.m2 * (s_end.v1 - s_end.v2);
      s_end.v2 = s_end.v1;
      traj.events.push_back({arc.t_end, EventKind::StickOnset, 0, s_end, dp});
      m_cur = Mode::stick();
    } else {
      const int d = arc.direction;
      const int nd = breakaway_direction(p, s_end, 0.0);
      traj.events.push_back({arc.t_end, EventKind::RegionCross, d, s_end, 0.0});
      traj.events.push_back(
          {arc.t_end, EventKind::DirectionReversal, nd, s_end, 0.0});
      m_cur = Mode::slip(nd);
    }
    boundaries.push_back({arc.t_end, s_end, m_cur});
    t_cur = arc.t_end;
    s_cur = s_end;
  }

  // Sample on the same grid as simulate(), with rows at every arc boundary.
  push_row(traj, p, 0.0, sc.initial, arc_mode(arcs.front()));
  if (sc.t_end <= 0.0) return traj;
  const double h = sc.integrator.h;
  long n = static_cast<long>(std::ceil(sc.t_end / h - 1e-12));
  if (n < 1) n = 1;

  size_t ai = 0;
  size_t bi = 0;
  for (long k = 0; k < n; ++k) {
    const double t1 = (k + 1 == n) ? sc.t_end : (k + 1) * h;
    while (bi < boundaries.size() && boundaries[bi].t <= t1) {
      push_row(traj, p, boundaries[bi].t, boundaries[bi].state,
               boundaries[bi].mode);
      ++ai;
      ++bi;
    }
    if ((k + 1) % sc.record_every == 0 || k + 1 == n) {
      State st = arcs[ai].eval(t1);
      if (arcs[ai].kind == Arc::Kind::Stick) st.v2 = st.v1;
      push_row(traj, p, t1, st, arc_mode(arcs[ai]));
    }
  }
  return traj;
}

}  // namespace oracle
}  // namespace frictpair
