#pragma once

// Plain-text run configuration: INI-style sections with key = value lines.
// Parsing and validation problems raise ConfigError listing every issue.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "delam/assembly.hpp"
#include "delam/material.hpp"
#include "delam/scenario.hpp"

namespace delam {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// One [section] of the file; repeated section names are kept in order.
struct ConfigSection {
  std::string name;
  std::map<std::string, std::string> values;
  int line = 0;

  bool has(const std::string& key) const { return values.count(key) > 0; }
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long integer(const std::string& key) const;
  long integer(const std::string& key, long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::string text(const std::string& key) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::vector<long> integerList(const std::string& key) const;
};

struct ConfigFile {
  std::vector<ConfigSection> sections;

  const ConfigSection* find(const std::string& name) const;
  std::vector<const ConfigSection*> findAll(const std::string& name) const;
};

ConfigFile parse_config_text(const std::string& text);
ConfigFile parse_config_file(const std::string& path);

/// One entry of the load schedule.
struct LoadStep {
  enum class Kind { Static, Fatigue };
  Kind kind = Kind::Static;
  double target = 0.0;            // load factor: static target or fatigue envelope
  double R = 0.0;                 // load ratio (fatigue)
  long cycles = 0;                // cycle budget (fatigue)
  double initial_increment = 0;   // static ramp start increment; 0 = automatic
  std::vector<long> checkpoints;  // cycle counts within the step
};

struct RunConfig {
  MaterialSet material;
  ScenarioSpec scenario;
  SolverSettings solver;
  std::vector<LoadStep> steps;
  long checkpoint_every = 0;  // fatigue increments between automatic checkpoints
};

/// Builds and fully validates a run configuration; throws ConfigError with
/// every detected problem on failure.
RunConfig load_run_config(const std::string& path);
RunConfig run_config_from(const ConfigFile& file);

}  // namespace delam
