#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "frictpair/integrators.hpp"

namespace frictpair {

/// Geometry of the sliding region S0 of the switching surface {v1 = v2}.
struct SlidingGeometry {
  double x_star = 0.0;  // half-width of S0: b(m1+m2)/(a2 m2) [m]
  double e_cr = 0.0;    // critical energy: b^2(m1+m2)^2/(2 a2 m2^2) [J]
  std::array<double, 3> n_s{0.0, 1.0, -1.0};  // normal to S in (x1,v1,v2)
};

SlidingGeometry sliding_geometry(const Params& p);

/// Non-dissipative half period of the sliding (stick) oscillation,
/// pi sqrt((m1+m2)/a2) [s]; the limit of the stick-interval lengths.
double stick_half_period(const Params& p);

enum class RegionLabel { OmegaPlus, OmegaMinus, S0, SPlus, SMinus, LPlus, LMinus };

std::string to_string(RegionLabel r);

/// Classifies a state against the switching-surface decomposition
/// S- | S0 | S+ with the exit rays l+- on the strip boundary. Ties within
/// tol_x resolve toward S0, where the dynamics are well defined.
RegionLabel classify_point(const Params& p, const State& s, double tol_v,
                           double tol_x);

/// Normal components (Phi- . n_S, Phi+ . n_S) of the two slip fields at a
/// point of the switching surface (free system):
///   Phi- . n = -(a2/m1) x1 + b/m1 + b/m2,
///   Phi+ . n = -(a2/m1) x1 - b/m1 - b/m2.
std::pair<double, double> transversality(const Params& p, const State& s);

struct StickInterval {
  double t_start = 0.0;
  double t_end = 0.0;
  bool open = false;  // interval truncated by the horizon
};

/// Maximal stick intervals paired from the event log (a leading interval is
/// detected from the initial mode, a trailing one reported open at t_end).
std::vector<StickInterval> stick_intervals(const Trajectory& traj);

/// Earliest recorded time after which |v1 - v2| stays within eps, or nullopt
/// when the trajectory never settles within the horizon.
std::optional<double> sync_time(const Trajectory& traj, double eps);

/// Successive decrements of the |x1| oscillation peaks, from three-point
/// local maxima with quadratic refinement. Under uninterrupted slip each
/// decrement approaches the classical Coulomb value 2b/a2; an undamped stick
/// phase contributes decrements near zero. Throws InsufficientDataError with
/// fewer than 3 usable extrema.
std::vector<double> amplitude_decay(const Trajectory& traj);

/// Instantaneous dissipation rate -b|v1-v2| - a1 v1^2 [W].
double expected_energy_rate(const Params& p, const State& s);

/// Max over uniformly spaced interior samples, away from events, of the
/// residual |dE/dt (central difference) - expected_energy_rate| [W].
double energy_rate_check(const Params& p, const Trajectory& traj);

struct OutcomeClass {
  enum class Kind { Equilibrium, MergedPeriodic, ConvergingToCritical };
  Kind kind = Kind::Equilibrium;
  double orbit_energy = 0.0;   // MergedPeriodic: energy of the final orbit
  double merge_time = 0.0;     // MergedPeriodic: time of the final stick onset
  double fit_exponent = 0.0;   // ConvergingToCritical: slope of log(E-e_cr) vs log t
};

std::string to_string(OutcomeClass::Kind k);

/// Long-horizon classification of a trajectory:
///  - Equilibrium when the terminal energy is below tol;
///  - MergedPeriodic when a final stick onset is followed by no further slip
///    and the terminal energy does not exceed e_cr + tol (a trajectory that
///    never slips at all is already periodic, merge_time 0);
///  - ConvergingToCritical otherwise, with the least-squares slope of
///    log(E - e_cr) against log t over the tail half of the stick intervals.
/// Mode changes are taken from the recorded samples (which carry a row at
/// every event), so the result is reproducible from the CSV form alone.
/// Throws InsufficientDataError when the horizon is too short to classify.
OutcomeClass classify_outcome(const Params& p, const Trajectory& traj,
                              double tol);

/// Dominant angular frequency of the x1 oscillation from the mean spacing of
/// its zero crossings (linear interpolation between samples) [rad/s].
/// Throws InsufficientDataError with fewer than 2 crossings.
double zero_crossing_omega(const Trajectory& traj);

}  // namespace frictpair
