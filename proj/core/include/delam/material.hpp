#pragma once

// Material data and mode-mixity / load-ratio interpolation of interface
// properties. Units are fixed repo-wide: N, mm, MPa, N/mm (toughness),
// N/mm^3 (penalty stiffness), cycles.

#include <optional>
#include <stdexcept>

#include <Eigen/Dense>

namespace delam {

/// Orthotropic bulk elastic constants of a unidirectional ply.
/// Axis 1 is the fiber direction, axis 3 the through-thickness direction.
struct BulkElastic {
  double E11 = 0.0;   // MPa
  double E22 = 0.0;   // MPa
  double E33 = 0.0;   // MPa
  double G12 = 0.0;   // MPa
  double G13 = 0.0;   // MPa
  double G23 = 0.0;   // MPa
  double nu12 = 0.0;
  double nu13 = 0.0;
  double nu23 = 0.0;

  void validate() const;

  /// Full 3D orthotropic stiffness in (11,22,33,23,13,12) Voigt order.
  Eigen::Matrix<double, 6, 6> stiffness3d() const;

  /// Plane-strain stiffness in the 1-3 plane (beam axis x, thickness y),
  /// Voigt order (11, 33, 13). Out-of-plane (2) strain is suppressed.
  Eigen::Matrix3d planeStrain13() const;
};

/// Quasi-static interface properties.
struct InterfaceStatic {
  double G_Ic = 0.0;    // N/mm
  double G_sc = 0.0;    // N/mm (shear; modes II and III are lumped)
  double eta = 0.0;     // B-K interaction exponent
  double tau_Io = 0.0;  // MPa
  double tau_so = 0.0;  // MPa
  double K = 1e5;       // N/mm^3 penalty stiffness

  void validate(double consistency_tol = 0.02) const;
};

/// Paris-law and threshold properties. eta2 absent selects the linear
/// threshold interpolation.
struct FatigueProps {
  double p_I = 0.0;
  double A_I = 0.0;   // mm/cycle
  double p_s = 0.0;
  double A_s = 0.0;   // mm/cycle
  double p_m = 0.0;
  double A_m = 1.0;   // mm/cycle
  double G_Ith = 0.0; // N/mm
  double G_sth = 0.0; // N/mm
  std::optional<double> eta2;

  void validate() const;
};

struct MaterialSet {
  BulkElastic bulk;
  InterfaceStatic iface;
  FatigueProps fatigue;
};

/// B-K interpolated fracture toughness at displacement-based mixity B.
double interp_toughness(double B, const InterfaceStatic& props);

/// Mixed-mode interlaminar strength at mixity B.
double interp_strength(double B, const InterfaceStatic& props);

/// Tensile strength consistent with a mode-independent penalty stiffness.
double derive_tensile_strength(double tau_so, double G_Ic, double G_sc);

/// Mode-interpolated Paris parameters (p, A) at energy-based mixity Phi.
struct ParisParams {
  double p = 0.0;
  double A = 0.0;
};
ParisParams interp_paris(double Phi, const FatigueProps& props);

/// Mode-interpolated propagation threshold at energy-based mixity Phi.
double interp_threshold(double Phi, const FatigueProps& props);

}  // namespace delam
