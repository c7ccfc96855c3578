#include "frictpair/trajectory_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "frictpair/errors.hpp"

namespace frictpair {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_strict_double(const std::string& s) {
  if (s.empty()) throw SchemaError("empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw SchemaError("malformed numeric field: '" + s + "'");
  return v;
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
    if (!f.good()) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

namespace {
constexpr const char* kTrajectoryHeader = "t,x1,v1,x2,v2,z,zdot,E,mode";
constexpr const char* kEventsHeader = "t,kind,x1,v1,x2,v2";
}  // namespace

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream o;
  o << kTrajectoryHeader << '\n';
  for (const Sample& s : traj.samples) {
    o << format_g17(s.t) << ',' << format_g17(s.state.x1) << ','
      << format_g17(s.state.v1) << ',' << format_g17(s.state.x2) << ','
      << format_g17(s.state.v2) << ',' << format_g17(s.state.z()) << ','
      << format_g17(s.state.zdot()) << ',' << format_g17(s.energy) << ','
      << s.mode.str() << '\n';
  }
  return o.str();
}

std::string events_csv(const Trajectory& traj) {
  std::ostringstream o;
  o << kEventsHeader << '\n';
  for (const Event& e : traj.events) {
    o << format_g17(e.time) << ',' << to_string(e.kind, e.direction) << ','
      << format_g17(e.state.x1) << ',' << format_g17(e.state.v1) << ','
      << format_g17(e.state.x2) << ',' << format_g17(e.state.v2) << '\n';
  }
  return o.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

}  // namespace

Trajectory read_trajectory_csv_text(const std::string& text, const Params& p) {
  require_valid(p);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("empty trajectory CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kTrajectoryHeader)
    throw SchemaError("trajectory CSV header mismatch: '" + line + "'");

  Trajectory traj;
  traj.scenario.params = p;
  size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9)
      throw SchemaError("trajectory CSV row " + std::to_string(row) +
                        ": expected 9 fields, got " + std::to_string(f.size()));
    Sample s;
    s.t = parse_strict_double(f[0]);
    s.state = {parse_strict_double(f[1]), parse_strict_double(f[2]),
               parse_strict_double(f[3]), parse_strict_double(f[4])};
    const double z = parse_strict_double(f[5]);
    const double zdot = parse_strict_double(f[6]);
    s.energy = parse_strict_double(f[7]);
    const auto mode = Mode::parse(f[8]);
    if (!mode)
      throw SchemaError("trajectory CSV row " + std::to_string(row) +
                        ": unknown mode '" + f[8] + "'");
    s.mode = *mode;
    if (z != s.state.z() || zdot != s.state.zdot())
      throw SchemaError("trajectory CSV row " + std::to_string(row) +
                        ": z/zdot columns inconsistent with the state");
    if (s.energy != energy(p, s.state))
      throw SchemaError("trajectory CSV row " + std::to_string(row) +
                        ": energy column inconsistent with params and state");
    if (!traj.samples.empty() && !(s.t > traj.samples.back().t))
      throw SchemaError("trajectory CSV row " + std::to_string(row) +
                        ": sample times must be strictly increasing");
    traj.samples.push_back(s);
  }
  if (traj.samples.empty()) throw SchemaError("trajectory CSV has no samples");
  traj.scenario.t_end = traj.samples.back().t;
  return traj;
}

Trajectory read_trajectory_csv(const std::string& path, const Params& p) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open trajectory CSV: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return read_trajectory_csv_text(buf.str(), p);
}

double classification_tol(const Params& p, const Trajectory& traj) {
  const double e0 = traj.samples.empty() ? 0.0 : traj.samples.front().energy;
  return 1e-9 * std::max(e0, sliding_geometry(p).e_cr);
}

nlohmann::ordered_json outcome_json(const OutcomeClass& oc) {
  nlohmann::ordered_json j;
  j["class"] = to_string(oc.kind);
  switch (oc.kind) {
    case OutcomeClass::Kind::Equilibrium:
      break;
    case OutcomeClass::Kind::MergedPeriodic:
      j["orbit_energy"] = oc.orbit_energy;
      j["merge_time"] = oc.merge_time;
      break;
    case OutcomeClass::Kind::ConvergingToCritical:
      j["fit_exponent"] = oc.fit_exponent;
      break;
  }
  return j;
}

nlohmann::ordered_json summary_json(const Params& p, const Trajectory& traj) {
  const SlidingGeometry g = sliding_geometry(p);
  nlohmann::ordered_json j;
  const auto t_sync = sync_time(traj, kSyncEps);
  j["sync_time"] = t_sync ? nlohmann::ordered_json(*t_sync)
                          : nlohmann::ordered_json(nullptr);
  try {
    j["outcome"] = outcome_json(classify_outcome(p, traj, classification_tol(p, traj)));
  } catch (const InsufficientDataError&) {
    j["outcome"] = nullptr;
  }
  j["e_cr"] = g.e_cr;
  j["x_star"] = g.x_star;
  auto intervals = nlohmann::ordered_json::array();
  for (const StickInterval& iv : stick_intervals(traj)) {
    nlohmann::ordered_json item;
    item["start"] = iv.t_start;
    item["end"] = iv.t_end;
    item["open"] = iv.open;
    intervals.push_back(item);
  }
  j["stick_intervals"] = intervals;
  j["terminal_energy"] = traj.samples.empty() ? 0.0 : traj.samples.back().energy;
  return j;
}

}  // namespace frictpair
