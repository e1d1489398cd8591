#include "delam/cohesive_law.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delam {

namespace {
inline double macaulay(double x) { return x > 0.0 ? x : 0.0; }
}

JumpDecomposition decompose_jump(const DisplacementJump& j) {
  JumpDecomposition out;
  out.delta_I = macaulay(j.d3);
  out.delta_s = std::hypot(j.d1, j.d2);
  out.lambda = std::hypot(out.delta_I, out.delta_s);
  const double denom = out.delta_I * out.delta_I + out.delta_s * out.delta_s;
  // B at lambda=0 is defined as 0 (pure mode I); damage cannot initiate there.
  out.B = denom > 0.0 ? out.delta_s * out.delta_s / denom : 0.0;
  return out;
}

OnsetCritical onset_critical(double mu_o, double G_c, double K) {
  if (mu_o <= 0.0 || G_c <= 0.0 || K <= 0.0)
    throw std::domain_error("onset_critical: inputs must be positive");
  OnsetCritical out;
  out.lambda_o = mu_o / K;
  out.lambda_c = 2.0 * G_c / mu_o;
  if (out.lambda_o >= out.lambda_c)
    throw std::runtime_error("onset_critical: lambda_o >= lambda_c (penalty stiffness too low)");
  return out;
}

double static_damage_envelope(double lambda, double lambda_o, double lambda_c) {
  if (lambda <= lambda_o) return 0.0;
  if (lambda >= lambda_c) return 1.0;
  return 1.0 - lambda_o * (lambda_c - lambda) / (lambda * (lambda_c - lambda_o));
}

Eigen::Vector3d traction(const DisplacementJump& j, double DK, double K) {
  Eigen::Vector3d t;
  t(0) = (1.0 - DK) * K * j.d1;
  t(1) = (1.0 - DK) * K * j.d2;
  t(2) = (1.0 - DK) * K * j.d3 - DK * K * macaulay(-j.d3);
  return t;
}

EnergyState energy_state(double DK, double B, const InterfaceStatic& props) {
  const double mu_o = interp_strength(B, props);
  const double G_c = interp_toughness(B, props);
  const auto oc = onset_critical(mu_o, G_c, props.K);
  EnergyState out;
  out.lambda_D = oc.lambda_o * oc.lambda_c /
                 (oc.lambda_c - DK * (oc.lambda_c - oc.lambda_o));
  out.De = 1.0 - (1.0 - DK) * out.lambda_D / oc.lambda_o;
  out.omega_d = out.De * G_c;
  const double tau_D = (1.0 - DK) * props.K * out.lambda_D;
  out.omega_tot = out.omega_d + 0.5 * tau_D * out.lambda_D;
  return out;
}

double stiffness_damage_from_energy_damage(double De, double lambda_o, double lambda_c) {
  De = std::clamp(De, 0.0, 1.0);
  return std::clamp(De * lambda_c / (lambda_o + De * (lambda_c - lambda_o)), 0.0, 1.0);
}

Eigen::Matrix3d tangent_stiffness(const DisplacementJump& j, double DK, double K,
                                  double lambda_o, double lambda_c,
                                  bool damage_growing) {
  Eigen::Matrix3d T = Eigen::Matrix3d::Zero();
  T(0, 0) = (1.0 - DK) * K;
  T(1, 1) = (1.0 - DK) * K;
  // Contact branch: full penalty stiffness under compression.
  T(2, 2) = j.d3 < 0.0 ? K : (1.0 - DK) * K;

  if (damage_growing) {
    const auto dec = decompose_jump(j);
    if (dec.lambda > lambda_o && dec.lambda < lambda_c) {
      // dDK/dlambda on the envelope (mixity held fixed).
      const double dDK_dl = lambda_o * lambda_c /
                            (dec.lambda * dec.lambda * (lambda_c - lambda_o));
      Eigen::Vector3d dl_dd(j.d1 / dec.lambda, j.d2 / dec.lambda,
                            macaulay(j.d3) / dec.lambda);
      Eigen::Vector3d dtn(j.d1, j.d2, macaulay(j.d3));
      T -= K * dDK_dl * dtn * dl_dd.transpose();
    }
  }
  return T;
}

}  // namespace delam
