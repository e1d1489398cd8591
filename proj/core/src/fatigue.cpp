#include "delam/fatigue.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delam {

namespace {
inline double macaulay(double x) { return x > 0.0 ? x : 0.0; }
}

Table1Partials table1_partials(double lambda, double B, const InterfaceStatic& props) {
  const double mu_o = interp_strength(B, props);
  const double G_c = interp_toughness(B, props);
  const auto oc = onset_critical(mu_o, G_c, props.K);
  const double lo = oc.lambda_o, lc = oc.lambda_c, K = props.K;
  const double Bpow = B > 0.0 ? std::pow(B, props.eta - 1.0) : (props.eta > 1.0 ? 0.0 : 1.0);
  const double omega_d = energy_state(static_damage_envelope(lambda, lo, lc), B, props).omega_d;

  Table1Partials t;
  t.dlambda_o_dmu_o = 1.0 / K;
  t.dlambda_c_dmu_o = -2.0 * G_c / (mu_o * mu_o);
  t.dlambda_c_dG_c = 2.0 / mu_o;
  t.dmu_o_dB = props.eta * (props.tau_so * props.tau_so - props.tau_Io * props.tau_Io) *
               Bpow / (2.0 * mu_o);
  t.dG_c_dB = props.eta * (props.G_sc - props.G_Ic) * Bpow;
  const double dl2 = (lo - lc) * (lo - lc);
  t.domega_d_dlambda_o = 0.5 * K * lc * (lo * lo - 2.0 * lc * lo + lc * lambda) / dl2;
  t.domega_d_dlambda_c = 0.5 * K * lo * lo * (lo - lambda) / dl2;
  t.domega_d_dlambda = 0.5 * K * lo * lc / (lc - lo);
  t.dDe_domega_d = 1.0 / G_c;
  t.dDe_dG_c = -omega_d / (G_c * G_c);
  return t;
}

double dDe_dB(double lambda, double B, const InterfaceStatic& props) {
  if (B == 0.0 && props.eta < 1.0)
    throw std::domain_error("dDe_dB: B=0 singular for eta < 1");
  const double mu_o = interp_strength(B, props);
  const double G_c = interp_toughness(B, props);
  const auto oc = onset_critical(mu_o, G_c, props.K);
  const double lo = oc.lambda_o, lc = oc.lambda_c;
  const double Bpow = B > 0.0 ? std::pow(B, props.eta - 1.0) : 0.0;
  const double dmu_dB = props.eta *
                        (props.tau_so * props.tau_so - props.tau_Io * props.tau_Io) *
                        Bpow / (2.0 * mu_o);
  const double dGc_dB = props.eta * (props.G_sc - props.G_Ic) * Bpow;
  const double dlo_dB = dmu_dB / props.K;
  const double dlc_dB = -2.0 * G_c / (mu_o * mu_o) * dmu_dB + 2.0 / mu_o * dGc_dB;
  const double d2 = (lc - lo) * (lc - lo);
  return ((lambda - lc) * dlo_dB - (lambda - lo) * dlc_dB) / d2;
}

double dDe_dlambda(double B, const InterfaceStatic& props) {
  const double mu_o = interp_strength(B, props);
  const double G_c = interp_toughness(B, props);
  const auto oc = onset_critical(mu_o, G_c, props.K);
  return 1.0 / (oc.lambda_c - oc.lambda_o);
}

JumpMixityPartials jump_mixity_partials(const DisplacementJump& j) {
  const auto dec = decompose_jump(j);
  if (dec.lambda <= 0.0)
    throw std::domain_error("jump_mixity_partials: singular at lambda = 0");
  const double l4 = dec.lambda * dec.lambda * dec.lambda * dec.lambda;
  const double dI = macaulay(j.d3);
  JumpMixityPartials out;
  out.dB_ddelta(0) = 2.0 * j.d1 * dI * dI / l4;
  out.dB_ddelta(1) = 2.0 * j.d2 * dI * dI / l4;
  out.dB_ddelta(2) = -2.0 * dec.delta_s * dec.delta_s * dI / l4;
  out.dlambda_ddelta(0) = j.d1 / dec.lambda;
  out.dlambda_ddelta(1) = j.d2 / dec.lambda;
  out.dlambda_ddelta(2) = dI / dec.lambda;
  return out;
}

SpatialSlopes spatial_slopes(const JumpMixityPartials& jp,
                             const Eigen::Vector3d& ddelta_dx1) {
  SpatialSlopes s;
  s.dB_dx1 = jp.dB_ddelta.dot(ddelta_dx1);
  s.dlambda_dx1 = jp.dlambda_ddelta.dot(ddelta_dx1);
  return s;
}

ParisRate paris_rate(double G_max, double G_c, double G_th, double p, double A, double R) {
  if (G_c <= 0.0) throw std::domain_error("paris_rate: G_c must be positive");
  ParisRate out;
  if (G_max <= G_th) return out;
  if (G_max >= G_c) {
    out.static_growth = true;
    G_max = G_c;
  }
  out.dadN = A * std::pow(G_max * (1.0 - R) / G_c, p);
  return out;
}

void damage_increment(CohesivePointState& state, const FatigueRateInputs& in,
                      const InterfaceStatic& props, double dadN, double dN) {
  if (dadN <= 0.0 || dN <= 0.0) return;
  if (state.DK <= 0.0 || state.DK >= 1.0) return;

  const double rate = dDe_dB(in.lambda, in.B, props) * in.dB_dx1 +
                      dDe_dlambda(in.B, props) * in.dlambda_dx1;
  const double dDe = std::max(0.0, rate * dadN * dN);
  if (dDe <= 0.0) return;

  // The upwind transport of the damage profile approaches saturation
  // asymptotically; snap the last fraction so trailing points fully open
  // instead of leaving near-saturated pockets behind the front.
  double De_new = std::min(1.0, state.De + dDe);
  if (De_new > 1.0 - 1e-3) De_new = 1.0;
  const double mu_o = interp_strength(in.B, props);
  const double G_c = interp_toughness(in.B, props);
  const auto oc = onset_critical(mu_o, G_c, props.K);
  const double DK_new = De_new >= 1.0
                            ? 1.0
                            : stiffness_damage_from_energy_damage(De_new, oc.lambda_o, oc.lambda_c);
  state.De = De_new;
  state.DK = std::max(state.DK, DK_new);
  state.B_at_update = in.B;
  const auto es = energy_state(state.DK, in.B, props);
  state.omega_d = es.omega_d;
  state.omega_tot = es.omega_tot;
}

long cycle_jump(double dadN_max, double da_target, long remaining_budget) {
  if (da_target <= 0.0) throw std::domain_error("cycle_jump: da_target must be positive");
  if (remaining_budget <= 0) return 0;
  if (dadN_max <= 0.0) return remaining_budget;  // front arrested
  const long dN = std::max<long>(1, static_cast<long>(std::floor(da_target / dadN_max)));
  return std::min(dN, remaining_budget);
}

double measured_dadN(long delta_damaged_elements, double element_length, double dN) {
  if (dN <= 0.0) throw std::domain_error("measured_dadN: dN must be positive");
  return static_cast<double>(delta_damaged_elements) * element_length / dN;
}

}  // namespace delam
