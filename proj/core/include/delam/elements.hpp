#pragma once

// Element-level kernels: bulk stiffness matrices and cohesive surface
// kinematics shared by the assembler and the front-mechanics field
// evaluations. Cohesive elements use nodal (Newton-Cotes) integration,
// so integration points coincide with face node pairs.

#include <array>

#include <Eigen/Dense>

#include "delam/cohesive_law.hpp"
#include "delam/mesh.hpp"

namespace delam {

/// Plane-strain quad4 stiffness (8x8), 2x2 Gauss. coords: 4x2 (mm).
Eigen::Matrix<double, 8, 8> quad4_stiffness(const Eigen::Matrix<double, 4, 2>& coords,
                                            const Eigen::Matrix3d& D);

/// Hex8 stiffness (24x24), 2x2x2 Gauss. coords: 8x3 (mm).
Eigen::Matrix<double, 24, 24> hex8_stiffness(const Eigen::Matrix<double, 8, 3>& coords,
                                             const Eigen::Matrix<double, 6, 6>& C);

/// Per-integration-point kinematics of a cohesive element.
struct CohPointData {
  Eigen::Matrix3d R;            // rows e1, e2, e3 of the element frame
  double weight = 0.0;          // tributary area (mm^2; mm in 2D per unit width)
  DisplacementJump jump;        // local-frame separation
  Eigen::Vector3d coord;        // reference mid-surface position
  // In-plane derivatives on the mid-surface, global components:
  // dvalue/ds_beta for tangent directions beta = 1,2 (beta = 1 only in 2D).
  Eigen::Vector3d tangent[2];   // unit tangents of the mid-surface
};

struct CohesiveKinematics {
  int nip = 0;
  std::array<CohPointData, 4> pt;
  std::array<std::array<double, 4>, 4> N{};  // N[ip][face node]
};

/// Evaluates mid-surface frame, weights and jumps at the Newton-Cotes
/// points of cohesive element `elem` under nodal displacements `u`.
CohesiveKinematics cohesive_kinematics(const Mesh& mesh, int elem,
                                       const Eigen::VectorXd& u);

/// In-plane gradient of a per-face-node scalar field on the mid-surface of
/// a cohesive element, evaluated at integration point ip. Returned in
/// global components (a vector lying in the mid-surface).
Eigen::Vector3d cohesive_scalar_gradient(const Mesh& mesh, int elem, int ip,
                                         const Eigen::VectorXd& u,
                                         const std::array<double, 4>& nodal_values);

/// Derivative of the global displacement jump with respect to arc length
/// along unit in-plane direction `dir` (global components), evaluated at
/// integration point ip via the mid-surface isoparametric map.
Eigen::Vector3d cohesive_jump_gradient(const Mesh& mesh, int elem, int ip,
                                       const Eigen::VectorXd& u,
                                       const Eigen::Vector3d& dir);

}  // namespace delam
