#include "delam/material.hpp"

#include <cmath>

namespace delam {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

}  // namespace

void BulkElastic::validate() const {
  require(E11 > 0, "BulkElastic: E11 must be positive");
  require(E22 > 0, "BulkElastic: E22 must be positive");
  require(E33 > 0, "BulkElastic: E33 must be positive");
  require(G12 > 0, "BulkElastic: G12 must be positive");
  require(G13 > 0, "BulkElastic: G13 must be positive");
  require(G23 > 0, "BulkElastic: G23 must be positive");
  require(nu12 > 0 && nu12 < 0.5, "BulkElastic: nu12 must lie in (0, 0.5)");
  require(nu13 > 0 && nu13 < 0.5, "BulkElastic: nu13 must lie in (0, 0.5)");
  require(nu23 > 0 && nu23 < 0.5, "BulkElastic: nu23 must lie in (0, 0.5)");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(stiffness3d());
  require(es.eigenvalues().minCoeff() > 0.0,
          "BulkElastic: stiffness tensor is not positive definite");
}

Eigen::Matrix<double, 6, 6> BulkElastic::stiffness3d() const {
  // Compliance, Voigt order (11,22,33,23,13,12).
  Eigen::Matrix<double, 6, 6> S = Eigen::Matrix<double, 6, 6>::Zero();
  S(0, 0) = 1.0 / E11;
  S(1, 1) = 1.0 / E22;
  S(2, 2) = 1.0 / E33;
  S(0, 1) = S(1, 0) = -nu12 / E11;
  S(0, 2) = S(2, 0) = -nu13 / E11;
  S(1, 2) = S(2, 1) = -nu23 / E22;
  S(3, 3) = 1.0 / G23;
  S(4, 4) = 1.0 / G13;
  S(5, 5) = 1.0 / G12;
  return S.inverse();
}

Eigen::Matrix3d BulkElastic::planeStrain13() const {
  const Eigen::Matrix<double, 6, 6> C = stiffness3d();
  Eigen::Matrix3d D = Eigen::Matrix3d::Zero();
  D(0, 0) = C(0, 0);
  D(0, 1) = D(1, 0) = C(0, 2);
  D(1, 1) = C(2, 2);
  D(2, 2) = C(4, 4);  // G13 shear
  return D;
}

void InterfaceStatic::validate(double consistency_tol) const {
  require(G_Ic > 0 && G_sc >= G_Ic, "InterfaceStatic: require 0 < G_Ic <= G_sc");
  require(eta > 0, "InterfaceStatic: eta must be positive");
  require(tau_Io > 0 && tau_so > 0 && K > 0,
          "InterfaceStatic: strengths and penalty stiffness must be positive");
  const double derived = derive_tensile_strength(tau_so, G_Ic, G_sc);
  require(std::abs(tau_Io - derived) <= consistency_tol * derived,
          "InterfaceStatic: tau_Io inconsistent with tau_so*sqrt(G_Ic/G_sc)");
}

void FatigueProps::validate() const {
  require(A_I > 0 && A_s > 0 && A_m > 0, "FatigueProps: Paris coefficients must be positive");
  require(G_Ith >= 0 && G_sth >= 0, "FatigueProps: thresholds must be non-negative");
}

double interp_toughness(double B, const InterfaceStatic& props) {
  require(B >= 0.0 && B <= 1.0, "interp_toughness: B outside [0,1]");
  if (B == 0.0) return props.G_Ic;
  if (B == 1.0) return props.G_sc;
  return props.G_Ic + (props.G_sc - props.G_Ic) * std::pow(B, props.eta);
}

double interp_strength(double B, const InterfaceStatic& props) {
  require(B >= 0.0 && B <= 1.0, "interp_strength: B outside [0,1]");
  if (B == 0.0) return props.tau_Io;
  if (B == 1.0) return props.tau_so;
  const double tI2 = props.tau_Io * props.tau_Io;
  const double ts2 = props.tau_so * props.tau_so;
  return std::sqrt(tI2 + (ts2 - tI2) * std::pow(B, props.eta));
}

double derive_tensile_strength(double tau_so, double G_Ic, double G_sc) {
  require(tau_so > 0 && G_Ic > 0 && G_sc > 0,
          "derive_tensile_strength: inputs must be positive");
  return tau_so * std::sqrt(G_Ic / G_sc);
}

ParisParams interp_paris(double Phi, const FatigueProps& props) {
  require(Phi >= 0.0 && Phi <= 1.0, "interp_paris: Phi outside [0,1]");
  require(props.A_m > 0.0, "interp_paris: A_m must be positive");
  if (Phi == 0.0) return {props.p_I, props.A_I};
  if (Phi == 1.0) return {props.p_s, props.A_s};
  ParisParams out;
  out.p = Phi * Phi * (props.p_s - props.p_I - props.p_m) + Phi * props.p_m + props.p_I;
  const double logA = Phi * Phi * std::log10(props.A_s / (props.A_m * props.A_I)) +
                      Phi * std::log10(props.A_m) + std::log10(props.A_I);
  out.A = std::pow(10.0, logA);
  return out;
}

double interp_threshold(double Phi, const FatigueProps& props) {
  require(Phi >= 0.0 && Phi <= 1.0, "interp_threshold: Phi outside [0,1]");
  if (props.eta2) {
    if (Phi == 0.0) return props.G_Ith;
    return props.G_Ith + (props.G_sth - props.G_Ith) * std::pow(Phi, *props.eta2);
  }
  return props.G_Ith + (props.G_sth - props.G_Ith) * Phi;
}

}  // namespace delam
