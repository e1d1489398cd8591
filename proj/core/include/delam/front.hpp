#pragma once

// Growth-driving-direction field, J-integral paths across the cohesive
// zone, and damage isoline extraction on the interface mid-surface.

#include <vector>

#include <Eigen/Dense>

#include "delam/assembly.hpp"

namespace delam {

/// One integration station of a J path. x1 is the arc coordinate along the
/// local crack axis (oriented toward the open side), strictly increasing.
struct PathStation {
  double x1 = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d t_loc = Eigen::Vector3d::Zero();        // traction, crack frame
  Eigen::Vector3d ddelta_dx1 = Eigen::Vector3d::Zero();   // jump derivative, crack frame
  double delta3 = 0.0;                                    // opening at the station
  double DK = 0.0;
};

struct JPath {
  std::vector<PathStation> stations;
  std::vector<int> points;  // integration points assigned to this path
  double J_I = 0.0, J_II = 0.0, J_III = 0.0;
  double G_max = 0.0;
  double Phi = 0.0;
  double dadN = 0.0;
  bool static_growth = false;
};

struct JResult {
  double J_I = 0.0, J_II = 0.0, J_III = 0.0;
  double G_max = 0.0;
  double Phi = 0.0;
};

/// Mode-decomposed line integral of traction times jump gradient over the
/// stations of a path (trapezoid rule over x1).
JResult j_integral(const std::vector<PathStation>& stations);

/// Sampled interface field on the structured interface grid plus per-point
/// growth direction data.
class FrontAnalyzer {
 public:
  explicit FrontAnalyzer(const FESystem& sys);

  /// Recomputes fields, GDD and J paths at the current equilibrium state.
  void update(const AnalysisState& state);

  const std::vector<JPath>& paths() const { return paths_; }

  /// Unit GDD per integration point (gradient direction of omega_tot/G_c,
  /// pointing from intact toward open material), global components.
  const std::vector<Eigen::Vector3d>& pointGdd() const { return point_gdd_; }
  const std::vector<char>& pointHasGdd() const { return point_has_gdd_; }

  /// Path index per integration point; -1 outside the cohesive zone.
  const std::vector<int>& pointPath() const { return point_path_; }

  /// Damage isolines at the given DK level as polylines of mid-surface
  /// points (marching squares on the interface grid).
  std::vector<std::vector<Eigen::Vector3d>> isolines(double level) const;

  /// Count of fully damaged cohesive elements (every point DK ~ 1).
  long fullyDamagedElements(const AnalysisState& state, double tol = 1e-6) const;

  // Interface reference frame (in-plane axes and normal).
  const Eigen::Vector3d& axis1() const { return s1_; }
  const Eigen::Vector3d& axis2() const { return s2_; }
  const Eigen::Vector3d& normal() const { return nrm_; }

  // Grid accessors (structured interface sampling; used by exports).
  int gridNi() const { return nni_; }
  int gridNj() const { return nnj_; }
  const Eigen::Vector3d& gridCoord(int i, int j) const { return coord_[idx(i, j)]; }
  double gridDK(int i, int j) const { return DK_[idx(i, j)]; }
  double gridPhiField(int i, int j) const { return phi_[idx(i, j)]; }

 private:
  int idx(int i, int j) const { return j * nni_ + i; }
  int cornerNode(int i, int j, int corner) const;
  bool locate(const Eigen::Vector3d& p, int& ci, int& cj, double& fx, double& fy) const;
  template <typename T>
  T bilinear(const std::vector<T>& field, int ci, int cj, double fx, double fy) const;
  void buildGridFields(const AnalysisState& state);
  void computeGdd(const AnalysisState& state);
  void tracePaths();

  const FESystem& sys_;
  int ni_ = 0, nj_ = 0;    // element counts
  int nni_ = 0, nnj_ = 0;  // grid node counts
  Eigen::Vector3d s1_, s2_, nrm_;  // in-plane axes and normal of the interface
  double noff_ = 0.0;              // interface offset along the normal

  std::vector<Eigen::Vector3d> coord_;
  std::vector<Eigen::Vector3d> jump_;
  std::vector<Eigen::Matrix<double, 3, 2>> djump_;  // d(jump)/ds_beta
  std::vector<double> DK_, phi_;
  std::vector<Eigen::Vector3d> gdd_;
  std::vector<char> has_gdd_;
  std::vector<double> xs_, ys_;  // grid node coordinates along s1/s2

  std::vector<Eigen::Vector3d> point_gdd_;
  std::vector<char> point_has_gdd_;
  std::vector<int> point_path_;
  std::vector<JPath> paths_;
};

}  // namespace delam
