#pragma once

// Global assembly and the Newton-Raphson equilibrium solve. Bulk behavior
// is linear elastic (stiffness assembled once); cohesive elements are
// re-evaluated every iteration with trial damage from the static envelope.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "delam/cohesive_law.hpp"
#include "delam/elements.hpp"
#include "delam/material.hpp"
#include "delam/mesh.hpp"

namespace delam {

struct SolverSettings {
  double tol_force = 5e-3;      // relative to the external (reaction) force
  double tol_disp = 1e-2;       // relative displacement correction
  int max_iterations = 60;
  double relaxation = 1.0;   // scaling of the iterative update
  // Trial damage ratchets across iterations (monotone fixed point). Used
  // as a fallback when the plain alternation oscillates after a large
  // damage jolt; the caller re-commits and verifies with a plain solve.
  bool ratchet_trial = false;
  double cutback_factor = 0.5;
  int max_cutbacks = 12;
  bool consistent_tangent = false;
};

/// Prescribed dof value: u[dof] = scale * load_factor.
struct Dirichlet {
  int dof = 0;
  double scale = 0.0;
};

/// Rigid-lever style multipoint constraint with a Lagrange multiplier:
/// sum_i w_i u_i = scale * load_factor. The multiplier is the lever force.
struct LinearConstraint {
  std::vector<std::pair<int, double>> terms;
  double scale = 0.0;
};

struct AnalysisState {
  Eigen::VectorXd u;
  std::vector<CohesivePointState> points;  // committed, one per integration point
  Eigen::VectorXd multipliers;             // constraint forces at equilibrium
  int step = 0;
  long cycle = 0;
  double load_factor = 0.0;
};

/// Trial (iteration-level) evaluation of one cohesive point.
struct TrialPoint {
  JumpDecomposition dec;
  OnsetCritical oc;
  double DK = 0.0;
  bool growing = false;
};

class FESystem {
 public:
  FESystem(Mesh mesh, MaterialSet mat, SolverSettings settings = {});

  const Mesh& mesh() const { return mesh_; }
  const MaterialSet& material() const { return mat_; }
  const SolverSettings& settings() const { return settings_; }
  SolverSettings& settings() { return settings_; }

  int numPointsPerElement() const { return mesh_.cohesiveNodesPerFace(); }
  int numPoints() const {
    return static_cast<int>(mesh_.cohesive.size()) * numPointsPerElement();
  }
  int dof(int node, int comp) const { return node * mesh_.dim + comp; }

  void setDirichlet(std::vector<Dirichlet> bcs);
  void setConstraints(std::vector<LinearConstraint> cons);

  AnalysisState initialState() const;

  struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
  };

  /// Solves equilibrium at the given load factor, updating state.u.
  /// Committed damage is not modified; trial damage is internal.
  SolveReport solve(AnalysisState& state, double load_factor);

  /// Applies the quasi-static envelope irreversibly at the current u and
  /// refreshes committed energies.
  void commit(AnalysisState& state) const;

  /// Trial evaluation of every cohesive point at displacements u.
  std::vector<TrialPoint> trialPoints(const Eigen::VectorXd& u,
                                      const std::vector<CohesivePointState>& committed) const;

  Eigen::VectorXd internalForce(const Eigen::VectorXd& u,
                                const std::vector<CohesivePointState>& committed) const;

  /// Sum of internal-force components over a set of dofs (reaction).
  double reactionSum(const AnalysisState& state, const std::vector<int>& dofs) const;

  double bulkStrainEnergy(const Eigen::VectorXd& u) const;

  /// Dissipated interface energy integrated over tributary areas (N*mm).
  double dissipatedEnergy(const AnalysisState& state) const;

  const std::vector<Dirichlet>& dirichlet() const { return dirichlet_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }

 private:
  void buildBulkStiffness();
  void assembleCohesive(const Eigen::VectorXd& u,
                        const std::vector<CohesivePointState>& committed,
                        std::vector<Eigen::Triplet<double>>* trips,
                        Eigen::VectorXd* f) const;

  Mesh mesh_;
  MaterialSet mat_;
  SolverSettings settings_;
  std::vector<Dirichlet> dirichlet_;
  std::vector<LinearConstraint> constraints_;
  Eigen::SparseMatrix<double> k_bulk_;
  std::vector<char> is_prescribed_;
  std::vector<int> free_index_;  // dof -> reduced index, -1 if prescribed
  int n_free_ = 0;
  mutable Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
  mutable bool pattern_analyzed_ = false;
};

}  // namespace delam
