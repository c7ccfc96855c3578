#include "frictpair/cli.hpp"

#include <atomic>
#include <filesystem>
#include <iostream>
#include <thread>

#include "frictpair/analysis.hpp"
#include "frictpair/errors.hpp"
#include "frictpair/oracle.hpp"
#include "frictpair/scenario_json.hpp"
#include "frictpair/svg.hpp"
#include "frictpair/trajectory_io.hpp"

namespace frictpair {
namespace cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SimulationError& e) {
    std::cerr << "integration error at t=" << format_g17(e.time) << ": "
              << e.what() << "\n";
    return kExitIntegration;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const InsufficientDataError& e) {
    std::cerr << "insufficient data: " << e.what() << "\n";
    return kExitInsufficientData;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}

std::vector<std::pair<double, double>> polyline(
    const Trajectory& traj, double (*fx)(const Sample&),
    double (*fy)(const Sample&)) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(traj.samples.size());
  for (const Sample& s : traj.samples) pts.push_back({fx(s), fy(s)});
  return pts;
}

constexpr const char* kBlue = "#1f77b4";
constexpr const char* kRed = "#d62728";

void write_svgs(const std::string& dir, const Trajectory& traj) {
  const Params& p = traj.scenario.params;
  {
    SvgPlot plot("body phase portraits", "x [m]", "dx/dt [m/s]");
    plot.add_polyline(polyline(traj,
                               [](const Sample& s) { return s.state.x1; },
                               [](const Sample& s) { return s.state.v1; }),
                      kBlue, 1.2, "body 1");
    plot.add_polyline(polyline(traj,
                               [](const Sample& s) { return s.state.x2; },
                               [](const Sample& s) { return s.state.v2; }),
                      kRed, 1.2, "body 2");
    plot.write(dir + "/phase_bodies.svg");
  }
  {
    SvgPlot plot("relative motion", "z [m]", "dz/dt [m/s]");
    plot.add_hline(0.0, "#606060");
    plot.add_polyline(polyline(traj,
                               [](const Sample& s) { return s.state.z(); },
                               [](const Sample& s) { return s.state.zdot(); }),
                      kBlue, 1.2);
    plot.write(dir + "/phase_relative.svg");
  }
  {
    // Projection onto the switching plane, sliding strip hatched; slip in
    // the two half-spaces blue/red, sliding parts black.
    SvgPlot plot("switching-plane projection", "x1 [m]", "v1 [m/s]");
    const double xs = sliding_geometry(p).x_star;
    plot.add_hatched_band(-xs, xs);
    std::vector<std::pair<double, double>> run;
    Mode run_mode = traj.samples.empty() ? Mode::stick()
                                         : traj.samples.front().mode;
    auto color_of = [&](Mode m) {
      if (m.is_stick()) return "#202020";
      return m.direction() > 0 ? kBlue : kRed;
    };
    for (const Sample& s : traj.samples) {
      if (!(s.mode == run_mode) && !run.empty()) {
        run.push_back({s.state.x1, s.state.v1});  // close the segment
        plot.add_polyline(run, color_of(run_mode), 1.2);
        run.clear();
      }
      run_mode = s.mode;
      run.push_back({s.state.x1, s.state.v1});
    }
    if (!run.empty()) plot.add_polyline(run, color_of(run_mode), 1.2);
    plot.write(dir + "/switching_plane.svg");
  }
}

struct BundleResult {
  std::string error;  // empty on success
  json summary;
  std::vector<std::pair<double, double>> rel_phase;  // decimated (z, zdot)
};

BundleResult write_bundle(const std::string& dir, const ScenarioFile& sf,
                          bool force_svg) {
  BundleResult res;
  try {
    const Trajectory traj = simulate(sf.scenario);
    fs::create_directories(dir);
    atomic_write_file(dir + "/trajectory.csv", trajectory_csv(traj));
    atomic_write_file(dir + "/events.csv", events_csv(traj));
    res.summary = summary_json(sf.scenario.params, traj);
    atomic_write_file(dir + "/summary.json", res.summary.dump(2) + "\n");
    if (sf.output.svg || force_svg) write_svgs(dir, traj);
    const size_t stride = std::max<size_t>(1, traj.samples.size() / 4000);
    for (size_t i = 0; i < traj.samples.size(); i += stride)
      res.rel_phase.push_back(
          {traj.samples[i].state.z(), traj.samples[i].state.zdot()});
  } catch (const std::exception& e) {
    res.error = e.what();
  }
  return res;
}

std::string json_field_str(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return "";
  const auto& v = j.at(key);
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return format_g17(v.get<double>());
  return v.dump();
}

}  // namespace

int cmd_run(const RunOptions& opt) {
  return guarded([&]() {
    const ScenarioFile sf = load_scenario_file(opt.scenario_path);
    const Trajectory traj = simulate(sf.scenario);
    fs::create_directories(opt.out_dir);
    atomic_write_file(opt.out_dir + "/trajectory.csv", trajectory_csv(traj));
    atomic_write_file(opt.out_dir + "/events.csv", events_csv(traj));
    atomic_write_file(opt.out_dir + "/summary.json",
                      summary_json(sf.scenario.params, traj).dump(2) + "\n");
    if (sf.output.svg || opt.svg) write_svgs(opt.out_dir, traj);
    return kOk;
  });
}

int cmd_sweep(const SweepOptions& opt) {
  return guarded([&]() {
    const SweepSpec spec = load_sweep_file(opt.sweep_path);
    const std::vector<SweepCombo> combos = expand_sweep(spec);
    fs::create_directories(opt.out_dir);

    std::vector<BundleResult> results(combos.size());
    const unsigned hw = std::thread::hardware_concurrency();
    const size_t jobs =
        std::min<size_t>(combos.size(),
                         opt.jobs > 0 ? static_cast<size_t>(opt.jobs)
                                      : (hw ? hw : 1));
    std::atomic<size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= combos.size()) return;
        char name[32];
        std::snprintf(name, sizeof(name), "combo_%03zu", i);
        results[i] =
            write_bundle(opt.out_dir + "/" + name, combos[i].file, opt.svg);
      }
    };
    std::vector<std::thread> pool;
    for (size_t i = 0; i + 1 < jobs; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    // Index, assembled in combination order regardless of scheduling.
    std::string index = "combo";
    for (const auto& [key, values] : spec.axes) index += "," + key;
    index += ",status,sync_time,outcome,terminal_energy\n";
    size_t failures = 0;
    for (size_t i = 0; i < combos.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "combo_%03zu", i);
      index += name;
      for (const auto& [key, v] : combos[i].values)
        index += "," + (v.is_number() ? format_g17(v.get<double>()) : v.dump());
      if (results[i].error.empty()) {
        const json& s = results[i].summary;
        index += ",ok," + json_field_str(s, "sync_time") + ",";
        index += s.contains("outcome") && !s.at("outcome").is_null()
                     ? json_field_str(s.at("outcome"), "class")
                     : "";
        index += "," + json_field_str(s, "terminal_energy");
      } else {
        ++failures;
        std::string msg = results[i].error;
        for (char& c : msg)
          if (c == ',' || c == '\n') c = ';';
        index += ",failed: " + msg + ",,,";
      }
      index += "\n";
    }
    atomic_write_file(opt.out_dir + "/index.csv", index);

    if (opt.svg) {
      static const char* kCycle[] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#9467bd", "#ff7f0e", "#8c564b"};
      SvgPlot plot("relative motion across the sweep", "z [m]", "dz/dt [m/s]");
      plot.add_hline(0.0, "#606060");
      for (size_t i = 0; i < combos.size(); ++i)
        if (results[i].error.empty())
          plot.add_polyline(results[i].rel_phase, kCycle[i % 6], 1.2,
                            combos[i].label);
      plot.write(opt.out_dir + "/sweep_relative.svg");
    }
    return failures == combos.size() && !combos.empty() ? kExitIntegration
                                                        : kOk;
  });
}

int cmd_geometry(const std::string& scenario_path) {
  return guarded([&]() {
    const Params p = load_params_file(scenario_path);
    const SlidingGeometry g = sliding_geometry(p);
    json j;
    j["x_star"] = g.x_star;
    j["e_cr"] = g.e_cr;
    j["n_s"] = g.n_s;
    j["half_period"] = stick_half_period(p);
    j["ray_endpoints"] = {{g.x_star, 0.0, 0.0}, {-g.x_star, 0.0, 0.0}};
    std::cout << j.dump(2) << "\n";
    return kOk;
  });
}

int cmd_classify(const ClassifyOptions& opt) {
  return guarded([&]() {
    const Params p = load_params_file(opt.params_path);
    const Trajectory traj = read_trajectory_csv(opt.csv_path, p);
    const OutcomeClass oc =
        classify_outcome(p, traj, classification_tol(p, traj));
    std::cout << outcome_json(oc).dump(2) << "\n";
    return kOk;
  });
}

}  // namespace cli
}  // namespace frictpair
