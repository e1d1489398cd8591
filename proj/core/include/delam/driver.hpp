#pragma once

// Load-schedule execution: adaptive quasi-static ramps and envelope-load
// fatigue increments with cycle jumps, checkpointing, and resume.

#include <memory>
#include <string>

#include "delam/assembly.hpp"
#include "delam/config.hpp"
#include "delam/front.hpp"
#include "delam/scenario.hpp"

namespace delam {

/// Equilibrium could not be found (after cutbacks / retries).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DriverOptions {
  std::string out_dir = "out";
  bool resume = false;
  long max_cycles = -1;  // cap on additional fatigue cycles; -1 = no cap
  int verbosity = 1;     // 0 silent, 1 progress, 2 per-increment detail
};

class Driver {
 public:
  Driver(RunConfig cfg, DriverOptions opt);
  ~Driver();

  /// Runs (or resumes) the full load schedule. Throws SolverError on
  /// equilibrium failure and std::runtime_error on I/O problems.
  void run();

  const FESystem& system() const { return *sys_; }
  const AnalysisState& state() const { return state_; }
  const Scenario& scenario() const { return scenario_; }
  long totalCycles() const { return total_cycles_; }

 private:
  void runStatic(int step_index, const LoadStep& step);
  void runFatigue(int step_index, const LoadStep& step, long start_cycles);
  void equilibrate(double load_factor, const char* context);
  /// Solve + commit until the quasi-static envelope stops growing.
  void settleEnvelope(double load_factor, const char* context);
  double specimenForce() const;
  void writeCheckpoint(int step_index, long cycles_done, const std::string& suffix) const;
  void writeSnapshot(const std::string& tag) const;
  void log(int level, const std::string& msg) const;

  RunConfig cfg_;
  DriverOptions opt_;
  Scenario scenario_;
  std::unique_ptr<FESystem> sys_;
  std::unique_ptr<FrontAnalyzer> front_;
  std::unique_ptr<class RunOutputs> out_;
  AnalysisState state_;
  long total_cycles_ = 0;
  long cycles_budget_used_ = 0;  // against opt_.max_cycles
  long fatigue_increment_ = 0;
};

}  // namespace delam
