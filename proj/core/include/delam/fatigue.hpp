#pragma once

// Fatigue damage-rate kernel: links the crack growth rate to per-point
// increments of the energy-based damage over a cycle jump.

#include <Eigen/Dense>

#include "delam/cohesive_law.hpp"
#include "delam/material.hpp"

namespace delam {

/// Partial derivatives of the damage/energy chain at a point state.
struct Table1Partials {
  double dlambda_o_dmu_o = 0.0;   // 1/K
  double dlambda_c_dmu_o = 0.0;   // -2 G_c / mu_o^2
  double dlambda_c_dG_c = 0.0;    // 2 / mu_o
  double dmu_o_dB = 0.0;          // eta (tau_so^2 - tau_Io^2) B^(eta-1) / (2 mu_o)
  double dG_c_dB = 0.0;           // eta (G_sc - G_Ic) B^(eta-1)
  double domega_d_dlambda_o = 0.0;
  double domega_d_dlambda_c = 0.0;
  double domega_d_dlambda = 0.0;  // 0.5 K lambda_o lambda_c / (lambda_c - lambda_o)
  double dDe_domega_d = 0.0;      // 1 / G_c
  double dDe_dG_c = 0.0;          // -omega_d / G_c^2
};

Table1Partials table1_partials(double lambda, double B, const InterfaceStatic& props);

/// dDe/dB of the energy-based damage restricted to the softening envelope.
double dDe_dB(double lambda, double B, const InterfaceStatic& props);

/// dDe/dlambda on the envelope: 1 / (lambda_c - lambda_o) at mixity B.
double dDe_dlambda(double B, const InterfaceStatic& props);

/// Gradients of B and lambda with respect to the local jump components.
struct JumpMixityPartials {
  Eigen::Vector3d dB_ddelta = Eigen::Vector3d::Zero();       // 1/mm
  Eigen::Vector3d dlambda_ddelta = Eigen::Vector3d::Zero();  // dimensionless
};

JumpMixityPartials jump_mixity_partials(const DisplacementJump& j);

/// Slopes of B and lambda along the crack coordinate x1.
struct SpatialSlopes {
  double dB_dx1 = 0.0;       // 1/mm
  double dlambda_dx1 = 0.0;  // mm/mm
};

SpatialSlopes spatial_slopes(const JumpMixityPartials& jp,
                             const Eigen::Vector3d& ddelta_dx1);

/// Paris-law growth rate. static_growth flags G_max >= G_c; the returned
/// rate is then the G_max = G_c limit and the caller hands the point to the
/// quasi-static update.
struct ParisRate {
  double dadN = 0.0;  // mm/cycle
  bool static_growth = false;
};

ParisRate paris_rate(double G_max, double G_c, double G_th, double p, double A, double R);

/// Inputs to a per-point fatigue damage increment.
struct FatigueRateInputs {
  double lambda = 0.0;
  double B = 0.0;
  double dB_dx1 = 0.0;
  double dlambda_dx1 = 0.0;
};

/// Advances De (and the derived DK) of one point over dN cycles at rate
/// dadN. Negative increments are clamped to zero; De, DK stay in [0,1].
void damage_increment(CohesivePointState& state, const FatigueRateInputs& in,
                      const InterfaceStatic& props, double dadN, double dN);

/// Cycle jump from the crack-advance target; capped by remaining budget.
/// A fully arrested front (dadN_max == 0) returns the remaining budget.
long cycle_jump(double dadN_max, double da_target, long remaining_budget);

/// Element-counting crack growth rate measurement.
double measured_dadN(long delta_damaged_elements, double element_length, double dN);

}  // namespace delam
