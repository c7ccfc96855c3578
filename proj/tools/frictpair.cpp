// Command-line front end for the friction-coupled pair simulator.

#include <string>

#include "CLI11.hpp"

#include "frictpair/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"frictpair: stick-slip dynamics of a friction-coupled inertial pair"};
  app.require_subcommand(1);

  frictpair::cli::RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "simulate one scenario file");
  run->add_option("file", run_opt.scenario_path, "scenario file (JSON)")
      ->required();
  run->add_option("--out", run_opt.out_dir, "output directory");
  run->add_flag("--svg", run_opt.svg, "emit phase-portrait SVGs");

  frictpair::cli::SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("file", sweep_opt.sweep_path, "sweep file (JSON)")
      ->required();
  sweep->add_option("--out", sweep_opt.out_dir, "output directory");
  sweep->add_option("-j,--jobs", sweep_opt.jobs,
                    "parallel workers (default: all cores)");
  sweep->add_flag("--svg", sweep_opt.svg, "emit SVGs incl. the sweep overlay");

  std::string geometry_path;
  CLI::App* geometry =
      app.add_subcommand("geometry", "print the sliding-region geometry");
  geometry->add_option("file", geometry_path, "scenario or params file (JSON)")
      ->required();

  frictpair::cli::ClassifyOptions classify_opt;
  CLI::App* classify =
      app.add_subcommand("classify", "classify a trajectory CSV");
  classify->add_option("csv", classify_opt.csv_path, "trajectory CSV")
      ->required();
  classify
      ->add_option("--params", classify_opt.params_path,
                   "params or scenario file (JSON)")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return frictpair::cli::cmd_run(run_opt);
  if (sweep->parsed()) return frictpair::cli::cmd_sweep(sweep_opt);
  if (geometry->parsed()) return frictpair::cli::cmd_geometry(geometry_path);
  if (classify->parsed()) return frictpair::cli::cmd_classify(classify_opt);
  return 0;
}
