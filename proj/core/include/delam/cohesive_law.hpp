#pragma once

// Pointwise bilinear mixed-mode traction-separation law with two damage
// measures: DK degrades the penalty stiffness, De tracks dissipated
// specific energy as a fraction of the mixed-mode toughness.

#include <Eigen/Dense>

#include "delam/material.hpp"

namespace delam {

/// Separation between paired interface faces in the local frame
/// (d1, d2 tangential, d3 normal; d3 < 0 means contact).
struct DisplacementJump {
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

/// Kinematic decomposition of a displacement jump.
struct JumpDecomposition {
  double delta_I = 0.0;   // opening (Macaulay of d3), mm
  double delta_s = 0.0;   // shear sliding resultant, mm
  double lambda = 0.0;    // equivalent one-dimensional jump, mm
  double B = 0.0;         // displacement-based mode mixity
};

JumpDecomposition decompose_jump(const DisplacementJump& j);

/// Onset and full-decohesion equivalent jumps of the bilinear envelope.
struct OnsetCritical {
  double lambda_o = 0.0;
  double lambda_c = 0.0;
};

OnsetCritical onset_critical(double mu_o, double G_c, double K);

/// Damage value on the static bilinear envelope (no history applied).
double static_damage_envelope(double lambda, double lambda_o, double lambda_c);

/// Tractions for a given jump and stiffness-degrading damage. Compression
/// recovers the full penalty stiffness.
Eigen::Vector3d traction(const DisplacementJump& j, double DK, double K);

/// Energy quantities of the current damage state.
struct EnergyState {
  double lambda_D = 0.0;    // jump associated with the damage state, mm
  double De = 0.0;          // energy-based damage
  double omega_d = 0.0;     // dissipated specific energy, N/mm
  double omega_tot = 0.0;   // total specific work, N/mm
};

EnergyState energy_state(double DK, double B, const InterfaceStatic& props);

/// Inverse of the De(DK) map at a fixed mode mixity B.
double stiffness_damage_from_energy_damage(double De, double lambda_o, double lambda_c);

/// Material tangent d t / d delta. With damage_growing the envelope
/// derivative dDK/ddelta is included (consistent operator), otherwise the
/// secant operator with DK frozen is returned.
Eigen::Matrix3d tangent_stiffness(const DisplacementJump& j, double DK, double K,
                                  double lambda_o, double lambda_c,
                                  bool damage_growing);

/// Per-integration-point history of a cohesive point.
struct CohesivePointState {
  double DK = 0.0;           // stiffness-degrading damage, committed
  double lambda_max = 0.0;   // historical maximum equivalent jump, mm
  double B_at_update = 0.0;  // mode mixity at the last damage update
  double De = 0.0;           // energy-based damage, committed
  double omega_d = 0.0;      // N/mm
  double omega_tot = 0.0;    // N/mm
  double gdd_angle = 0.0;    // GDD angle in the mid-surface plane, rad
  double dadN = 0.0;         // growth rate attributed to this point, mm/cycle
  double J_I = 0.0, J_II = 0.0, J_III = 0.0;  // path components, N/mm
  bool static_growth = false;  // G_max >= G_c was flagged by the fatigue kernel
};

}  // namespace delam
