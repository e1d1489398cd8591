// Command-line front end: run a load schedule, validate a config file, or
// export a checkpoint to CSV / grid snapshots.

#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "delam/checkpoint.hpp"
#include "delam/config.hpp"
#include "delam/driver.hpp"
#include "delam/export.hpp"

namespace {

// Exit codes: 0 success, 2 configuration error, 3 solver failure, 4 I/O.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kSolverError = 3;
constexpr int kIoError = 4;

int cmdRun(const std::string& config_path, const delam::DriverOptions& opt) {
  delam::RunConfig cfg;
  try {
    cfg = delam::load_run_config(config_path);
  } catch (const delam::ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << "\n";
    return kConfigError;
  }
  try {
    delam::Driver driver(std::move(cfg), opt);
    driver.run();
  } catch (const delam::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolverError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

int cmdValidate(const std::string& config_path) {
  try {
    const delam::RunConfig cfg = delam::load_run_config(config_path);
    // Also exercise mesh generation so geometry problems surface here.
    const delam::Scenario sc = delam::build_scenario(cfg.scenario);
    std::cout << "ok: " << sc.mesh.nodes.size() << " nodes, " << sc.mesh.bulk.size()
              << " bulk elements, " << sc.mesh.cohesive.size() << " cohesive elements, "
              << cfg.steps.size() << " load steps\n";
  } catch (const delam::ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}

int cmdExport(const std::string& ckpt_path, const std::string& format,
              const std::string& out_dir) {
  delam::Checkpoint ck;
  try {
    ck = delam::load_checkpoint(ckpt_path);
  } catch (const std::exception& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIoError;
  }
  try {
    const delam::Scenario sc = delam::build_scenario(ck.scenario);
    delam::FESystem sys(sc.mesh, ck.material);
    std::filesystem::create_directories(out_dir);
    if (format == "csv") {
      delam::export_point_csv(out_dir + "/points.csv", sys, ck.state);
      std::cout << out_dir << "/points.csv\n";
    } else {
      delam::export_vtk(out_dir + "/field.vtk", sys, ck.state);
      std::cout << out_dir << "/field.vtk\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "export failed: " << e.what() << "\n";
    return kIoError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"layered-composite delamination simulator"};
  app.require_subcommand(1);

  std::string config_path;
  delam::DriverOptions opt;
  auto* run = app.add_subcommand("run", "run a load schedule from a config file");
  run->add_option("config", config_path, "configuration file")->required();
  run->add_option("--out", opt.out_dir, "output directory (default: out)");
  run->add_flag("--resume", opt.resume, "resume from the latest checkpoint in --out");
  run->add_option("--max-cycles", opt.max_cycles, "stop after this many additional cycles");
  run->add_option("--verbosity", opt.verbosity, "0 silent, 1 progress, 2 detail");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "check a config file and its geometry");
  validate->add_option("config", validate_path, "configuration file")->required();

  std::string ckpt_path, format = "csv", export_out = "export";
  auto* exp = app.add_subcommand("export", "convert a checkpoint to analysis files");
  exp->add_option("checkpoint", ckpt_path, "checkpoint file")->required();
  exp->add_option("--format", format, "csv | grid")
      ->check(CLI::IsMember({"csv", "grid"}));
  exp->add_option("--out", export_out, "output directory (default: export)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  if (run->parsed()) return cmdRun(config_path, opt);
  if (validate->parsed()) return cmdValidate(validate_path);
  return cmdExport(ckpt_path, format, export_out);
}
