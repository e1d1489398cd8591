#include <cmath>
#include <vector>

#include <doctest.h>

#include "delam/cohesive_law.hpp"
#include "delam/fatigue.hpp"
#include "helpers.hpp"

using namespace delam;
using testutil::fdCentral;
using testutil::referenceMaterial;
using testutil::relErr;
using testutil::uniform;

namespace {

const InterfaceStatic kIface = referenceMaterial().iface;

/// Energy damage on the softening envelope as a function of (lambda, B).
double envelopeDe(double lambda, double B) {
  const auto oc =
      onset_critical(interp_strength(B, kIface), interp_toughness(B, kIface), kIface.K);
  return (lambda - oc.lambda_o) / (oc.lambda_c - oc.lambda_o);
}

/// Dissipated energy as an explicit function of (lambda_o, lambda_c, lambda).
double omegaD(double lo, double lc, double lambda) {
  return 0.5 * kIface.K * lo * lc * (lambda - lo) / (lc - lo);
}

struct AdmissibleState {
  double lambda = 0.0;
  double B = 0.0;
};

AdmissibleState randomEnvelopeState() {
  AdmissibleState s;
  s.B = uniform(0.02, 0.98);
  const auto oc =
      onset_critical(interp_strength(s.B, kIface), interp_toughness(s.B, kIface), kIface.K);
  s.lambda = uniform(1.05 * oc.lambda_o, 0.95 * oc.lambda_c);
  return s;
}

}  // namespace

TEST_SUITE("fatigue") {

TEST_CASE("dDe/dB vanishes in the degenerate cases") {
  CHECK(dDe_dB(1e-3, 0.0, kIface) == 0.0);
  InterfaceStatic equal = kIface;
  equal.G_sc = equal.G_Ic;
  equal.tau_so = equal.tau_Io;
  for (double B : {0.1, 0.5, 0.9})
    CHECK(std::abs(dDe_dB(1e-3, B, equal)) < 1e-12);
}

TEST_CASE("dDe/dB matches finite differences at random envelope states") {
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const AdmissibleState s = randomEnvelopeState();
    const double got = dDe_dB(s.lambda, s.B, kIface);
    const double fd =
        fdCentral([&](double B) { return envelopeDe(s.lambda, B); }, s.B, 1e-6);
    if (std::abs(fd) < 1e-8) continue;
    CHECK(relErr(got, fd) < 1e-5);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("dDe/dlambda values and finite differences") {
  CHECK(dDe_dlambda(0.0, kIface) == doctest::Approx(54.39).epsilon(1e-3));
  CHECK(dDe_dlambda(1.0, kIface) == doctest::Approx(18.00).epsilon(1e-3));
  for (int trial = 0; trial < 120; ++trial) {
    const AdmissibleState s = randomEnvelopeState();
    const double fd =
        fdCentral([&](double l) { return envelopeDe(l, s.B); }, s.lambda, 1e-6);
    CHECK(relErr(dDe_dlambda(s.B, kIface), fd) < 1e-6);
  }
}

TEST_CASE("derivative table against finite differences of parent functions") {
  CHECK(table1_partials(1e-3, 0.3, kIface).dlambda_o_dmu_o ==
        doctest::Approx(1e-5).epsilon(1e-12));
  {
    const auto t = table1_partials(1e-3, 0.0, kIface);
    const auto oc = onset_critical(32.6, 0.305, 1e5);
    const double want =
        0.5 * 1e5 * oc.lambda_o * oc.lambda_c / (oc.lambda_c - oc.lambda_o);
    CHECK(t.domega_d_dlambda == doctest::Approx(want).epsilon(1e-10));
    CHECK(want == doctest::Approx(16.59).epsilon(1e-3));
  }

  for (int trial = 0; trial < 120; ++trial) {
    const AdmissibleState s = randomEnvelopeState();
    const double mu = interp_strength(s.B, kIface);
    const double gc = interp_toughness(s.B, kIface);
    const auto oc = onset_critical(mu, gc, kIface.K);
    const auto t = table1_partials(s.lambda, s.B, kIface);

    CHECK(relErr(t.dlambda_o_dmu_o,
                 fdCentral([&](double m) { return m / kIface.K; }, mu)) < 1e-6);
    CHECK(relErr(t.dlambda_c_dmu_o,
                 fdCentral([&](double m) { return 2.0 * gc / m; }, mu)) < 1e-6);
    CHECK(relErr(t.dlambda_c_dG_c,
                 fdCentral([&](double g) { return 2.0 * g / mu; }, gc)) < 1e-6);
    CHECK(relErr(t.dmu_o_dB,
                 fdCentral([&](double B) { return interp_strength(B, kIface); }, s.B)) <
          1e-5);
    CHECK(relErr(t.dG_c_dB,
                 fdCentral([&](double B) { return interp_toughness(B, kIface); }, s.B)) <
          1e-5);
    CHECK(relErr(t.domega_d_dlambda_o,
                 fdCentral([&](double lo) { return omegaD(lo, oc.lambda_c, s.lambda); },
                           oc.lambda_o)) < 1e-5);
    CHECK(relErr(t.domega_d_dlambda_c,
                 fdCentral([&](double lc) { return omegaD(oc.lambda_o, lc, s.lambda); },
                           oc.lambda_c)) < 1e-5);
    CHECK(relErr(t.domega_d_dlambda,
                 fdCentral([&](double l) { return omegaD(oc.lambda_o, oc.lambda_c, l); },
                           s.lambda)) < 1e-5);
    const double wd = omegaD(oc.lambda_o, oc.lambda_c, s.lambda);
    CHECK(relErr(t.dDe_domega_d, fdCentral([&](double w) { return w / gc; }, wd)) < 1e-6);
    CHECK(relErr(t.dDe_dG_c, fdCentral([&](double g) { return wd / g; }, gc)) < 1e-6);
  }
}

TEST_CASE("jump gradients of mixity and equivalent jump") {
  {
    const auto jp = jump_mixity_partials({0, 0, 0.002});
    CHECK(jp.dB_ddelta.norm() == 0.0);
    CHECK(jp.dlambda_ddelta(2) == doctest::Approx(1.0));
    CHECK(jp.dlambda_ddelta(0) == 0.0);
  }
  {
    const double a = 0.001;
    const auto jp = jump_mixity_partials({a, 0, a});
    CHECK(jp.dB_ddelta(0) == doctest::Approx(500.0).epsilon(1e-10));
    CHECK(jp.dB_ddelta(2) == doctest::Approx(-500.0).epsilon(1e-10));
  }
  CHECK_THROWS_AS(jump_mixity_partials({0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(jump_mixity_partials({0, 0, -1e-3}), std::domain_error);

  for (int trial = 0; trial < 120; ++trial) {
    DisplacementJump j{uniform(-5e-3, 5e-3), uniform(-5e-3, 5e-3), uniform(1e-4, 5e-3)};
    const auto jp = jump_mixity_partials(j);
    for (int comp = 0; comp < 3; ++comp) {
      auto perturb = [&](double h) {
        DisplacementJump q = j;
        (comp == 0 ? q.d1 : comp == 1 ? q.d2 : q.d3) += h;
        return q;
      };
      const double h = 1e-9;
      const auto dp = decompose_jump(perturb(h));
      const auto dm = decompose_jump(perturb(-h));
      const double fdB = (dp.B - dm.B) / (2 * h);
      const double fdL = (dp.lambda - dm.lambda) / (2 * h);
      CHECK(std::abs(jp.dB_ddelta(comp) - fdB) <
            1e-5 * std::max(std::abs(fdB), 1.0));
      CHECK(std::abs(jp.dlambda_ddelta(comp) - fdL) < 1e-6);
    }
  }
}

TEST_CASE("slope contraction") {
  const auto jp = jump_mixity_partials({0, 0, 0.002});
  auto s = spatial_slopes(jp, Eigen::Vector3d::Zero());
  CHECK(s.dB_dx1 == 0.0);
  CHECK(s.dlambda_dx1 == 0.0);

  s = spatial_slopes(jp, Eigen::Vector3d(0, 0, 0.03));
  CHECK(s.dlambda_dx1 == doctest::Approx(0.03));
  CHECK(s.dB_dx1 == 0.0);

  for (int trial = 0; trial < 20; ++trial) {
    const DisplacementJump j{uniform(-3e-3, 3e-3), uniform(-3e-3, 3e-3),
                             uniform(1e-4, 3e-3)};
    const Eigen::Vector3d g(uniform(-1, 1), uniform(-1, 1), uniform(-1, 1));
    const auto p = jump_mixity_partials(j);
    const auto sl = spatial_slopes(p, g);
    CHECK(sl.dB_dx1 == doctest::Approx(p.dB_ddelta.dot(g)).epsilon(1e-14));
    CHECK(sl.dlambda_dx1 == doctest::Approx(p.dlambda_ddelta.dot(g)).epsilon(1e-14));
  }
}

TEST_CASE("growth-rate law") {
  const auto r = paris_rate(0.2, 0.305, 8.54e-2, 8.39, 6.45e-2, 0.1);
  CHECK(!r.static_growth);
  CHECK(r.dadN == doctest::Approx(6.45e-2 * std::pow(0.2 * 0.9 / 0.305, 8.39))
                      .epsilon(1e-12));
  CHECK(r.dadN == doctest::Approx(7.72e-4).epsilon(2e-3));

  CHECK(paris_rate(0.05, 0.305, 8.54e-2, 8.39, 6.45e-2, 0.1).dadN == 0.0);
  CHECK(paris_rate(0.2, 0.305, 8.54e-2, 8.39, 6.45e-2, 0.999999).dadN ==
        doctest::Approx(0.0).epsilon(1e-30));

  const auto sg = paris_rate(0.4, 0.305, 8.54e-2, 8.39, 6.45e-2, 0.1);
  CHECK(sg.static_growth);
  CHECK(sg.dadN == doctest::Approx(6.45e-2 * std::pow(0.9, 8.39)).epsilon(1e-12));

  CHECK_THROWS_AS(paris_rate(0.2, 0.0, 1e-2, 8.39, 6.45e-2, 0.1), std::domain_error);

  double prev = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double g = 8.6e-2 + k * (0.3 - 8.6e-2) / 50.0;
    const double rate = paris_rate(g, 0.305, 8.54e-2, 8.39, 6.45e-2, 0.1).dadN;
    CHECK(rate >= prev);
    prev = rate;
  }
}

TEST_CASE("damage increment basics") {
  const auto oc = onset_critical(32.6, 0.305, 1e5);
  CohesivePointState p;
  p.DK = static_damage_envelope(0.004, oc.lambda_o, oc.lambda_c);
  p.De = energy_state(p.DK, 0.0, kIface).De;
  const CohesivePointState before = p;

  damage_increment(p, {0.004, 0.0, 0.0, 0.2}, kIface, 0.0, 100.0);
  CHECK(p.DK == before.DK);
  CHECK(p.De == before.De);

  // Push far past full damage: both measures clamp at exactly one.
  damage_increment(p, {0.004, 0.0, 0.0, 0.5}, kIface, 1.0, 1e9);
  CHECK(p.De == 1.0);
  CHECK(p.DK == 1.0);

  // Negative spatial slope must not heal.
  CohesivePointState q = before;
  damage_increment(q, {0.004, 0.0, 0.0, -0.5}, kIface, 1e-3, 100.0);
  CHECK(q.De == before.De);
  CHECK(q.DK == before.DK);

  // Intact and fully damaged points are skipped.
  CohesivePointState intact;
  damage_increment(intact, {1e-5, 0.0, 0.0, 0.5}, kIface, 1e-3, 100.0);
  CHECK(intact.DK == 0.0);
}

TEST_CASE("damage increment agrees with an explicit Euler oracle") {
  const auto oc = onset_critical(32.6, 0.305, 1e5);
  CohesivePointState p;
  p.DK = static_damage_envelope(1.5e-3, oc.lambda_o, oc.lambda_c);
  p.De = energy_state(p.DK, 0.0, kIface).De;

  double De_oracle = p.De;
  const double dadN = 2e-4;
  for (int k = 0; k < 50; ++k) {
    // Deterministic, slowly varying prescribed inputs.
    const double lambda = 1.5e-3 + 1e-5 * k;
    const double dl = 0.15 + 0.001 * k;
    const double dB = 0.0;
    const double dN = 100.0;
    damage_increment(p, {lambda, 0.0, dB, dl}, kIface, dadN, dN);

    const double rate = dDe_dlambda(0.0, kIface) * dl * dadN;  // B = 0 branch
    De_oracle = std::min(1.0, De_oracle + rate * dN);
    CHECK(std::abs(p.De - De_oracle) < 1e-8);
    // The stored stiffness damage stays consistent with the energy damage.
    CHECK(std::abs(energy_state(p.DK, 0.0, kIface).De - p.De) < 1e-10);
  }
}

TEST_CASE("steady-zone translation property") {
  // A frozen mode-I profile lambda(x) translated by dadN*dN must reproduce
  // the pointwise chain-rule update.
  const auto oc = onset_critical(32.6, 0.305, 1e5);
  const double L = 2.0;  // zone length, mm
  const double slope = (oc.lambda_c - oc.lambda_o) / L;
  const double advance = 0.05;  // dadN * dN, mm

  const int n = 40;
  std::vector<CohesivePointState> pts(n);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = (i + 0.5) * L / n;
    const double lambda = oc.lambda_o + slope * x[i];
    pts[i].DK = static_damage_envelope(lambda, oc.lambda_o, oc.lambda_c);
    pts[i].De = energy_state(pts[i].DK, 0.0, kIface).De;
  }
  std::vector<double> De_before(n);
  for (int i = 0; i < n; ++i) De_before[i] = pts[i].De;

  for (int i = 0; i < n; ++i) {
    const double lambda = oc.lambda_o + slope * x[i];
    damage_increment(pts[i], {lambda, 0.0, 0.0, slope}, kIface, advance, 1.0);
  }
  // Compare against the profile evaluated at x + advance.
  for (int i = 0; i < n; ++i) {
    const double lam_shift = oc.lambda_o + slope * (x[i] + advance);
    const double De_want =
        std::min(1.0, envelopeDe(std::min(lam_shift, oc.lambda_c), 0.0));
    if (De_before[i] <= 0.0 || De_before[i] >= 1.0) continue;
    CHECK(std::abs(pts[i].De - De_want) < 1e-8);
  }
}

TEST_CASE("cycle jump selection") {
  CHECK(cycle_jump(0.0001220703125, 0.25, 1000000) == 2048);  // binary-exact ratio
  CHECK(cycle_jump(0.25, 0.5, 100) == 2);
  CHECK(cycle_jump(0.0001220703125, 0.25, 500) == 500);
  CHECK(cycle_jump(0.0, 0.2, 12345) == 12345);
  CHECK(cycle_jump(10.0, 0.2, 1000) == 1);  // never below one cycle
  CHECK_THROWS_AS(cycle_jump(1e-4, 0.0, 100), std::domain_error);
}

TEST_CASE("element-counting rate measurement") {
  CHECK(measured_dadN(3, 0.2, 1000.0) == doctest::Approx(6e-4).epsilon(1e-12));
  CHECK(measured_dadN(0, 0.2, 1000.0) == 0.0);
  CHECK(measured_dadN(1, 0.36810, 1000.0) == doctest::Approx(3.681e-4).epsilon(1e-4));
}

}  // TEST_SUITE
