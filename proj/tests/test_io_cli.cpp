#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "frictpair/cli.hpp"
#include "frictpair/errors.hpp"
#include "frictpair/scenario_json.hpp"
#include "frictpair/trajectory_io.hpp"
#include "test_helpers.hpp"

using namespace frictpair;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() /
           ("frictpair_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream o;
  o << f.rdbuf();
  return o.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
}

json sync_scenario_doc(double b = 0.05, double t_end = 6.0) {
  return json{
      {"params", {{"m1", 1.0}, {"m2", 1.0}, {"a1", 0.0}, {"a2", 200.0}, {"b", b}}},
      {"variant", "closed_form"},
      {"integrator", {{"type", "event_rk4"}, {"h", 1e-3}, {"event_tol_t", 1e-9}}},
      {"initial", {{"x1", 0.0}, {"v1", 0.15}, {"x2", 0.0}, {"v2", 0.0}}},
      {"t_end", t_end}};
}

// Sub-critical launch that merges onto a periodic orbit well before t_end.
json merging_scenario_doc(double t_end = 2.0) {
  json doc = sync_scenario_doc(0.5, t_end);
  doc["initial"]["v1"] = 0.06;
  return doc;
}

}  // namespace

TEST_CASE("17-digit serialization round-trips doubles bit-exactly") {
  testing::Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    double v = rng.uniform(-1.0, 1.0) *
               std::pow(10.0, std::floor(rng.uniform(-30, 30)));
    if (i % 17 == 0) v = 0.0;
    const double back = parse_strict_double(format_g17(v));
    CHECK(back == v);
  }
}

TEST_CASE("scenario documents parse and reject unknown keys") {
  const ScenarioFile sf = parse_scenario_json(sync_scenario_doc());
  CHECK(sf.scenario.params.b == 0.05);
  CHECK(sf.scenario.variant == ModelVariant::ClosedForm);
  CHECK(sf.scenario.integrator.kind == IntegratorKind::EventRk4);
  CHECK(!sf.scenario.initial_mode);

  json bad = sync_scenario_doc();
  bad["mystery"] = 1;
  CHECK_THROWS_AS(parse_scenario_json(bad), ParseError);
  json bad2 = sync_scenario_doc();
  bad2["params"]["mass"] = 1.0;
  CHECK_THROWS_AS(parse_scenario_json(bad2), ParseError);
  json bad3 = sync_scenario_doc();
  bad3["params"]["b"] = -1.0;
  CHECK_THROWS_AS(parse_scenario_json(bad3), ValidationError);
  json bad4 = sync_scenario_doc();
  bad4.erase("integrator");
  CHECK_THROWS_AS(parse_scenario_json(bad4), ParseError);
}

TEST_CASE("trajectory CSV round-trips bit-exactly and flags tampering") {
  const Trajectory traj = simulate(testing::slip_sync_scenario(1.0));
  const std::string csv = trajectory_csv(traj);
  const Trajectory back =
      read_trajectory_csv_text(csv, traj.scenario.params);
  REQUIRE(back.samples.size() == traj.samples.size());
  for (size_t i = 0; i < traj.samples.size(); ++i) {
    CHECK(back.samples[i].t == traj.samples[i].t);
    CHECK(back.samples[i].state == traj.samples[i].state);
    CHECK(back.samples[i].energy == traj.samples[i].energy);
    CHECK(back.samples[i].mode == traj.samples[i].mode);
  }

  // corrupt one energy digit: the recomputation must notice
  std::string tampered = csv;
  const size_t pos = tampered.rfind(",stick");
  const size_t comma = tampered.rfind(',', pos - 1);
  tampered[comma - 2] = tampered[comma - 2] == '4' ? '5' : '4';
  CHECK_THROWS_AS(read_trajectory_csv_text(tampered, traj.scenario.params),
                  SchemaError);

  CHECK_THROWS_AS(read_trajectory_csv_text("nonsense", traj.scenario.params),
                  SchemaError);
}

TEST_CASE("run command writes the bundle and classify reproduces the summary") {
  TempDir dir("run");
  spit(dir.path / "scenario.json", merging_scenario_doc().dump(2));
  cli::RunOptions opt;
  opt.scenario_path = (dir.path / "scenario.json").string();
  opt.out_dir = (dir.path / "out").string();
  REQUIRE(cli::cmd_run(opt) == cli::kOk);

  const std::string csv = slurp(dir.path / "out" / "trajectory.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "t,x1,v1,x2,v2,z,zdot,E,mode");
  CHECK(fs::exists(dir.path / "out" / "events.csv"));

  const json summary = json::parse(slurp(dir.path / "out" / "summary.json"));
  const std::vector<std::string> keys{"sync_time", "outcome", "e_cr",
                                      "x_star", "stick_intervals",
                                      "terminal_energy"};
  size_t i = 0;
  for (const auto& item : summary.items()) CHECK(item.key() == keys.at(i++));
  CHECK(i == keys.size());

  // classification from the CSV alone matches the summary exactly
  const Params p{1.0, 1.0, 0.0, 200.0, 0.5};
  const Trajectory back =
      read_trajectory_csv((dir.path / "out" / "trajectory.csv").string(), p);
  const OutcomeClass oc = classify_outcome(p, back, classification_tol(p, back));
  CHECK(outcome_json(oc) == summary.at("outcome"));
  CHECK(summary.at("outcome").at("class") == "merged_periodic");
}

TEST_CASE("run command: malformed file exits 1 and writes nothing") {
  TempDir dir("bad");
  spit(dir.path / "broken.json", "{ not json");
  cli::RunOptions opt;
  opt.scenario_path = (dir.path / "broken.json").string();
  opt.out_dir = (dir.path / "out").string();
  CHECK(cli::cmd_run(opt) == cli::kExitParse);
  CHECK(!fs::exists(dir.path / "out"));
}

TEST_CASE("run command: invalid params exit 2, diverging run exits 3") {
  TempDir dir("codes");
  json bad = sync_scenario_doc();
  bad["params"]["m1"] = -1.0;
  spit(dir.path / "invalid.json", bad.dump());
  cli::RunOptions opt;
  opt.scenario_path = (dir.path / "invalid.json").string();
  opt.out_dir = (dir.path / "out").string();
  CHECK(cli::cmd_run(opt) == cli::kExitValidation);

  json diverging = sync_scenario_doc(0.05, 2.0);
  diverging["forcing"] = {{"type", "constant"}, {"value", 1e308}};
  spit(dir.path / "diverging.json", diverging.dump());
  opt.scenario_path = (dir.path / "diverging.json").string();
  CHECK(cli::cmd_run(opt) == cli::kExitIntegration);
  CHECK(!fs::exists(dir.path / "out" / "trajectory.csv"));
}

TEST_CASE("classify command exit codes: ok, schema mismatch, short horizon") {
  TempDir dir("classify");
  spit(dir.path / "scenario.json", merging_scenario_doc().dump());
  cli::RunOptions run_opt;
  run_opt.scenario_path = (dir.path / "scenario.json").string();
  run_opt.out_dir = (dir.path / "out").string();
  REQUIRE(cli::cmd_run(run_opt) == cli::kOk);
  spit(dir.path / "params.json",
       R"({"m1":1.0,"m2":1.0,"a1":0.0,"a2":200.0,"b":0.5})");

  cli::ClassifyOptions copt;
  copt.csv_path = (dir.path / "out" / "trajectory.csv").string();
  copt.params_path = (dir.path / "params.json").string();
  CHECK(cli::cmd_classify(copt) == cli::kOk);

  // a stiffness mismatch breaks the recomputed energy column
  spit(dir.path / "params_wrong.json",
       R"({"m1":1.0,"m2":1.0,"a1":0.0,"a2":100.0,"b":0.5})");
  cli::ClassifyOptions wrong = copt;
  wrong.params_path = (dir.path / "params_wrong.json").string();
  CHECK(cli::cmd_classify(wrong) == cli::kExitSchema);

  // truncated horizon: keep the header and the first 40 rows only
  std::istringstream all(slurp(dir.path / "out" / "trajectory.csv"));
  std::ostringstream head;
  std::string line;
  for (int i = 0; i < 41 && std::getline(all, line); ++i) head << line << '\n';
  spit(dir.path / "short.csv", head.str());
  cli::ClassifyOptions cut = copt;
  cut.csv_path = (dir.path / "short.csv").string();
  CHECK(cli::cmd_classify(cut) == cli::kExitInsufficientData);
}

TEST_CASE("sweep: bundles per combination, deterministic across parallelism") {
  TempDir dir("sweep");
  const json sweep_doc{{"base", sync_scenario_doc(0.05, 2.0)},
                       {"sweep", {{"params.b", {0.2, 0.5}}}}};
  spit(dir.path / "sweep.json", sweep_doc.dump(2));

  cli::SweepOptions opt;
  opt.sweep_path = (dir.path / "sweep.json").string();
  opt.out_dir = (dir.path / "serial").string();
  opt.jobs = 1;
  REQUIRE(cli::cmd_sweep(opt) == cli::kOk);
  opt.out_dir = (dir.path / "parallel").string();
  opt.jobs = 4;
  REQUIRE(cli::cmd_sweep(opt) == cli::kOk);

  CHECK(slurp(dir.path / "serial" / "index.csv") ==
        slurp(dir.path / "parallel" / "index.csv"));
  for (const char* combo : {"combo_000", "combo_001"}) {
    CHECK(slurp(dir.path / "serial" / combo / "trajectory.csv") ==
          slurp(dir.path / "parallel" / combo / "trajectory.csv"));
  }
  const std::string index = slurp(dir.path / "serial" / "index.csv");
  CHECK(index.find("combo,params.b,status,sync_time,outcome,terminal_energy") == 0);
}

TEST_CASE("a single-value sweep reproduces the plain run byte for byte") {
  TempDir dir("degenerate");
  spit(dir.path / "scenario.json", sync_scenario_doc(0.2, 2.0).dump());
  const json sweep_doc{{"base", sync_scenario_doc(0.05, 2.0)},
                       {"sweep", {{"params.b", {0.2}}}}};
  spit(dir.path / "sweep.json", sweep_doc.dump());

  cli::RunOptions ropt;
  ropt.scenario_path = (dir.path / "scenario.json").string();
  ropt.out_dir = (dir.path / "run").string();
  REQUIRE(cli::cmd_run(ropt) == cli::kOk);
  cli::SweepOptions sopt;
  sopt.sweep_path = (dir.path / "sweep.json").string();
  sopt.out_dir = (dir.path / "sweep").string();
  REQUIRE(cli::cmd_sweep(sopt) == cli::kOk);

  CHECK(slurp(dir.path / "run" / "trajectory.csv") ==
        slurp(dir.path / "sweep" / "combo_000" / "trajectory.csv"));
  CHECK(slurp(dir.path / "run" / "summary.json") ==
        slurp(dir.path / "sweep" / "combo_000" / "summary.json"));
}

TEST_CASE("sweep validation: unknown swept field and oversized products") {
  TempDir dir("sweepbad");
  const json bad_field{{"base", sync_scenario_doc()},
                       {"sweep", {{"params.zeta", {0.1}}}}};
  spit(dir.path / "bad.json", bad_field.dump());
  cli::SweepOptions opt;
  opt.sweep_path = (dir.path / "bad.json").string();
  opt.out_dir = (dir.path / "out").string();
  CHECK(cli::cmd_sweep(opt) == cli::kExitParse);

  std::vector<double> big(200);
  for (size_t i = 0; i < big.size(); ++i) big[i] = 0.01 + 0.001 * i;
  const json too_big{{"base", sync_scenario_doc()},
                     {"sweep", {{"params.b", big}, {"t_end", big}}}};
  spit(dir.path / "big.json", too_big.dump());
  opt.sweep_path = (dir.path / "big.json").string();
  CHECK(cli::cmd_sweep(opt) == cli::kExitValidation);
}

TEST_CASE("geometry command accepts scenario or bare params and validates") {
  TempDir dir("geom");
  spit(dir.path / "scenario.json", sync_scenario_doc().dump());
  CHECK(cli::cmd_geometry((dir.path / "scenario.json").string()) == cli::kOk);
  spit(dir.path / "params.json", R"({"m1":1,"m2":1,"a2":200,"b":0.5})");
  CHECK(cli::cmd_geometry((dir.path / "params.json").string()) == cli::kOk);
  spit(dir.path / "bad.json", R"({"m1":1,"m2":1,"a2":200,"b":0})");
  CHECK(cli::cmd_geometry((dir.path / "bad.json").string()) ==
        cli::kExitValidation);
}

TEST_CASE("svg emission adds plots without touching the numeric outputs") {
  TempDir dir("svg");
  spit(dir.path / "scenario.json", sync_scenario_doc(0.05, 1.0).dump());
  cli::RunOptions plain;
  plain.scenario_path = (dir.path / "scenario.json").string();
  plain.out_dir = (dir.path / "plain").string();
  REQUIRE(cli::cmd_run(plain) == cli::kOk);
  cli::RunOptions with_svg = plain;
  with_svg.out_dir = (dir.path / "svg").string();
  with_svg.svg = true;
  REQUIRE(cli::cmd_run(with_svg) == cli::kOk);

  CHECK(slurp(dir.path / "plain" / "trajectory.csv") ==
        slurp(dir.path / "svg" / "trajectory.csv"));
  CHECK(!fs::exists(dir.path / "plain" / "phase_bodies.svg"));
  for (const char* name :
       {"phase_bodies.svg", "phase_relative.svg", "switching_plane.svg"}) {
    const std::string svg = slurp(dir.path / "svg" / name);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("polyline") != std::string::npos);
  }
}
