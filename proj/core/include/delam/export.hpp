#pragma once

// Plain-text result writers: CSV histories, interface point tables, damage
// isoline polylines, and legacy-VTK full-field snapshots.

#include <fstream>
#include <string>
#include <vector>

#include "delam/assembly.hpp"
#include "delam/front.hpp"

namespace delam {

/// Fixed-precision float formatting shared by every text writer.
std::string fmt_num(double v);

/// One committed quasi-static increment of the force-displacement record.
struct StaticRecord {
  int step = 0;
  int increment = 0;
  double load_factor = 0.0;  // applied displacement, mm
  double force = 0.0;        // specimen force, N
};

/// One fatigue increment of the growth history.
struct FatigueRecord {
  int step = 0;
  long increment = 0;
  long cycle = 0;       // total cycle count after the jump
  long dN = 0;          // cycles advanced this increment
  long damaged_elements = 0;
  double dadN_measured = 0.0;  // element-counting rate, mm/cycle
  double dadN_model = 0.0;     // fastest path rate, mm/cycle
  double G_max = 0.0;
  double Phi = 0.0;
  double G_th = 0.0;
  double p = 0.0;
  double A = 0.0;
  double J_I = 0.0, J_II = 0.0, J_III = 0.0;
  double force = 0.0;  // specimen force at the envelope, N
  int paths = 0;
  int static_growth = 0;  // paths flagged for quasi-static handling
};

/// CSV history files of one run directory. Opens in append mode when
/// resuming; otherwise writes fresh files with a header line.
class RunOutputs {
 public:
  RunOutputs(const std::string& dir, bool resume);

  void write(const StaticRecord& r);
  void write(const FatigueRecord& r);

 private:
  std::ofstream static_csv_;
  std::ofstream fatigue_csv_;
};

/// Per-integration-point interface table (CSV).
void export_point_csv(const std::string& path, const FESystem& sys,
                      const AnalysisState& state);

/// Damage isoline polylines at the given levels (CSV: level, polyline, x, y, z).
void export_isolines_csv(const std::string& path, const FrontAnalyzer& fa,
                         const std::vector<double>& levels);

/// Full-field snapshot in legacy plain-text unstructured-grid format:
/// nodes, bulk and cohesive cells, nodal displacements, and per-cell damage
/// and growth fields on the cohesive cells.
void export_vtk(const std::string& path, const FESystem& sys, const AnalysisState& state);

}  // namespace delam
