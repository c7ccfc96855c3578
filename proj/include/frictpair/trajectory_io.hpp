#pragma once

#include <string>

#include "json.hpp"

#include "frictpair/analysis.hpp"
#include "frictpair/integrators.hpp"

namespace frictpair {

/// Shortest exact decimal form: 17 significant digits, round-trips to the
/// identical double.
std::string format_g17(double v);

/// Strict double parser; throws SchemaError on trailing garbage.
double parse_strict_double(const std::string& s);

/// Writes `content` to `path` atomically (temp file + rename).
void atomic_write_file(const std::string& path, const std::string& content);

/// Trajectory CSV, header `t,x1,v1,x2,v2,z,zdot,E,mode`, 17 significant
/// digits per numeric field, mode encoded as stick/slip+/slip-.
std::string trajectory_csv(const Trajectory& traj);

/// Events CSV, header `t,kind,x1,v1,x2,v2`.
std::string events_csv(const Trajectory& traj);

/// Reconstructs a trajectory from the CSV produced by trajectory_csv.
/// Verifies the header, the derived z/zdot columns and the energy column
/// against the params (tamper check); throws SchemaError on any mismatch.
/// The event log is left empty; mode changes are visible in the samples.
Trajectory read_trajectory_csv_text(const std::string& text, const Params& p);
Trajectory read_trajectory_csv(const std::string& path, const Params& p);

/// Velocity threshold for the sync_time entry of the run summary: the scale
/// at which the bodies visibly move as one. The asymptotic regime keeps
/// micro-slip excursions alive long after that, so much tighter thresholds
/// report the regime tail instead of the synchronization.
inline constexpr double kSyncEps = 1e-3;  // [m/s]

/// Run summary with the fixed key set
/// {sync_time, outcome, e_cr, x_star, stick_intervals, terminal_energy}.
/// `outcome` is null when the horizon is too short to classify.
nlohmann::ordered_json summary_json(const Params& p, const Trajectory& traj);

/// Classification tolerance used by the summary and the classify command.
double classification_tol(const Params& p, const Trajectory& traj);

nlohmann::ordered_json outcome_json(const OutcomeClass& oc);

}  // namespace frictpair
