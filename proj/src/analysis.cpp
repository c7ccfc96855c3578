#include "frictpair/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "frictpair/errors.hpp"

namespace frictpair {

SlidingGeometry sliding_geometry(const Params& p) {
  require_valid(p);
  SlidingGeometry g;
  g.x_star = p.b * (p.m1 + p.m2) / (p.a2 * p.m2);
  g.e_cr = p.b * p.b * (p.m1 + p.m2) * (p.m1 + p.m2) /
           (2.0 * p.a2 * p.m2 * p.m2);
  return g;
}

double stick_half_period(const Params& p) {
  return std::numbers::pi * std::sqrt((p.m1 + p.m2) / p.a2);
}

std::string to_string(RegionLabel r) {
  switch (r) {
    case RegionLabel::OmegaPlus: return "Omega+";
    case RegionLabel::OmegaMinus: return "Omega-";
    case RegionLabel::S0: return "S0";
    case RegionLabel::SPlus: return "S+";
    case RegionLabel::SMinus: return "S-";
    case RegionLabel::LPlus: return "l+";
    case RegionLabel::LMinus: return "l-";
  }
  return "?";
}

RegionLabel classify_point(const Params& p, const State& s, double tol_v,
                           double tol_x) {
  const double zd = s.zdot();
  if (std::abs(zd) > tol_v)
    return zd > 0.0 ? RegionLabel::OmegaPlus : RegionLabel::OmegaMinus;
  const double xs = sliding_geometry(p).x_star;
  const double v = s.v1;  // common velocity on S
  if (std::abs(s.x1 - xs) <= tol_x)
    return v > 0.0 ? RegionLabel::LPlus : RegionLabel::S0;
  if (std::abs(s.x1 + xs) <= tol_x)
    return v < 0.0 ? RegionLabel::LMinus : RegionLabel::S0;
  if (s.x1 > xs) return RegionLabel::SPlus;
  if (s.x1 < -xs) return RegionLabel::SMinus;
  return RegionLabel::S0;
}

std::pair<double, double> transversality(const Params& p, const State& s) {
  const double common = -(p.a2 / p.m1) * s.x1;
  const double jump = p.b / p.m1 + p.b / p.m2;
  return {common + jump, common - jump};
}

std::vector<StickInterval> stick_intervals(const Trajectory& traj) {
  std::vector<StickInterval> out;
  if (traj.samples.empty()) return out;
  std::optional<double> open_start;
  if (traj.samples.front().mode.is_stick())
    open_start = traj.samples.front().t;
  for (const Event& e : traj.events) {
    if (e.kind == EventKind::StickOnset) {
      if (!open_start) open_start = e.time;
    } else if (e.kind == EventKind::SlipOnset) {
      if (open_start) {
        out.push_back({*open_start, e.time, false});
        open_start.reset();
      }
    }
  }
  if (open_start)
    out.push_back({*open_start, traj.samples.back().t, true});
  return out;
}

std::optional<double> sync_time(const Trajectory& traj, double eps) {
  const auto& S = traj.samples;
  if (S.empty()) return std::nullopt;
  long j = static_cast<long>(S.size()) - 1;
  while (j >= 0 && std::abs(S[static_cast<size_t>(j)].state.zdot()) <= eps)
    --j;
  if (j == static_cast<long>(S.size()) - 1) return std::nullopt;
  if (j < 0) return S.front().t;
  return S[static_cast<size_t>(j) + 1].t;
}

namespace {

// Vertex value of the parabola through three (t, y) points; falls back to the
// middle value when the triple is not concave.
double refined_peak(double t1, double y1, double t2, double y2, double t3,
                    double y3) {
  const double d1 = (y2 - y1) / (t2 - t1);
  const double d2 = (y3 - y2) / (t3 - t2);
  const double a = (d2 - d1) / (t3 - t1);
  if (!(a < 0.0)) return y2;
  const double t_star = 0.5 * (t1 + t2) - d1 / (2.0 * a);
  return y1 + d1 * (t_star - t1) + a * (t_star - t1) * (t_star - t2);
}

}  // namespace

std::vector<double> amplitude_decay(const Trajectory& traj) {
  const auto& S = traj.samples;
  std::vector<double> peaks;
  for (size_t i = 1; i + 1 < S.size(); ++i) {
    const double ym = std::abs(S[i - 1].state.x1);
    const double y0 = std::abs(S[i].state.x1);
    const double yp = std::abs(S[i + 1].state.x1);
    if (y0 >= ym && y0 > yp)
      peaks.push_back(
          refined_peak(S[i - 1].t, ym, S[i].t, y0, S[i + 1].t, yp));
  }
  if (peaks.size() < 3)
    throw InsufficientDataError(
        "amplitude_decay: fewer than 3 oscillation extrema");
  std::vector<double> decrements(peaks.size() - 1);
  for (size_t k = 0; k + 1 < peaks.size(); ++k)
    decrements[k] = peaks[k] - peaks[k + 1];
  return decrements;
}

double expected_energy_rate(const Params& p, const State& s) {
  return -p.b * std::abs(s.zdot()) - p.a1 * s.v1 * s.v1;
}

double energy_rate_check(const Params& p, const Trajectory& traj) {
  const auto& S = traj.samples;
  if (S.size() < 3) return 0.0;
  std::vector<double> ev_times;
  ev_times.reserve(traj.events.size());
  for (const Event& e : traj.events) ev_times.push_back(e.time);

  double worst = 0.0;
  for (size_t i = 1; i + 1 < S.size(); ++i) {
    const double dtm = S[i].t - S[i - 1].t;
    const double dtp = S[i + 1].t - S[i].t;
    // The centered difference is second order only on uniform triples.
    if (std::abs(dtp - dtm) > 1e-9 * std::max(dtp, dtm)) continue;
    const auto lo = std::lower_bound(ev_times.begin(), ev_times.end(),
                                     S[i - 1].t);
    if (lo != ev_times.end() && *lo <= S[i + 1].t) continue;
    const double fd = (S[i + 1].energy - S[i - 1].energy) / (dtm + dtp);
    const double res = std::abs(fd - expected_energy_rate(p, S[i].state));
    worst = std::max(worst, res);
  }
  return worst;
}

std::string to_string(OutcomeClass::Kind k) {
  switch (k) {
    case OutcomeClass::Kind::Equilibrium: return "equilibrium";
    case OutcomeClass::Kind::MergedPeriodic: return "merged_periodic";
    case OutcomeClass::Kind::ConvergingToCritical: return "converging_to_critical";
  }
  return "?";
}

OutcomeClass classify_outcome(const Params& p, const Trajectory& traj,
                              double tol) {
  const auto& S = traj.samples;
  if (S.empty()) throw InsufficientDataError("classify_outcome: no samples");
  const double e_term = S.back().energy;
  if (e_term <= tol)
    return {OutcomeClass::Kind::Equilibrium, 0.0, 0.0, 0.0};

  const double e_cr = sliding_geometry(p).e_cr;

  struct Transition {
    double t;
    bool to_stick;
    double energy;
  };
  std::vector<Transition> transitions;
  bool any_slip = S.front().mode.is_slip();
  for (size_t i = 1; i < S.size(); ++i) {
    if (S[i].mode.is_slip()) any_slip = true;
    if (S[i].mode == S[i - 1].mode) continue;
    if (S[i].mode.is_stick())
      transitions.push_back({S[i].t, true, S[i].energy});
    else if (S[i - 1].mode.is_stick())
      transitions.push_back({S[i].t, false, S[i].energy});
  }

  if (!any_slip)  // never left the surface: already a periodic (or constant) orbit
    return {OutcomeClass::Kind::MergedPeriodic, e_term, 0.0, 0.0};

  if (!transitions.empty() && transitions.back().to_stick &&
      e_term <= e_cr + tol)
    return {OutcomeClass::Kind::MergedPeriodic, e_term, transitions.back().t,
            0.0};

  // Asymptotic branch: fit log(E - e_cr) against log t over the tail half of
  // the stick-onset energies.
  std::vector<std::pair<double, double>> pts;
  for (const Transition& tr : transitions)
    if (tr.to_stick && tr.t > 0.0 && tr.energy - e_cr > 0.0)
      pts.push_back({std::log(tr.t), std::log(tr.energy - e_cr)});
  const size_t tail_start = pts.size() / 2;
  const size_t m = pts.size() - tail_start;
  if (m < 10)
    throw InsufficientDataError(
        "classify_outcome: horizon too short (need >= 10 tail stick "
        "intervals)");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = tail_start; i < pts.size(); ++i) {
    sx += pts[i].first;
    sy += pts[i].second;
    sxx += pts[i].first * pts[i].first;
    sxy += pts[i].first * pts[i].second;
  }
  const double denom = m * sxx - sx * sx;
  if (denom == 0.0)
    throw InsufficientDataError("classify_outcome: degenerate tail fit");
  const double slope = (m * sxy - sx * sy) / denom;
  return {OutcomeClass::Kind::ConvergingToCritical, 0.0, 0.0, slope};
}

double zero_crossing_omega(const Trajectory& traj) {
  const auto& S = traj.samples;
  std::vector<double> crossings;
  for (size_t i = 1; i < S.size(); ++i) {
    const double a = S[i - 1].state.x1;
    const double b = S[i].state.x1;
    if (a * b < 0.0) {
      const double frac = a / (a - b);
      crossings.push_back(S[i - 1].t + frac * (S[i].t - S[i - 1].t));
    }
  }
  if (crossings.size() < 2)
    throw InsufficientDataError(
        "zero_crossing_omega: fewer than 2 zero crossings of x1");
  const double mean_half_period =
      (crossings.back() - crossings.front()) /
      static_cast<double>(crossings.size() - 1);
  return std::numbers::pi / mean_half_period;
}

}  // namespace frictpair
