#pragma once

// Binary checkpoint files. Self-contained: material and specimen data are
// embedded so a checkpoint can be exported without the original config.

#include <string>

#include "delam/assembly.hpp"
#include "delam/material.hpp"
#include "delam/scenario.hpp"

namespace delam {

struct Checkpoint {
  MaterialSet material;
  ScenarioSpec scenario;
  AnalysisState state;
  int step_index = 0;      // load-schedule step in progress
  long cycles_done = 0;    // cycles completed within that step
  long total_cycles = 0;   // accumulated over all fatigue steps
};

void save_checkpoint(const std::string& path, const Checkpoint& ck);

/// Throws std::runtime_error on malformed or truncated files.
Checkpoint load_checkpoint(const std::string& path);

}  // namespace delam
