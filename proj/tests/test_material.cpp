#include <cmath>

#include <doctest.h>

#include "delam/material.hpp"
#include "helpers.hpp"

using namespace delam;
using testutil::referenceMaterial;

TEST_SUITE("material") {

TEST_CASE("toughness interpolation endpoints and midpoint") {
  const InterfaceStatic i = referenceMaterial().iface;
  CHECK(interp_toughness(0.0, i) == doctest::Approx(0.305).epsilon(1e-12));
  CHECK(interp_toughness(1.0, i) == doctest::Approx(2.77).epsilon(1e-12));
  const double mid = 0.305 + (2.77 - 0.305) * std::pow(0.5, 2.05);
  CHECK(interp_toughness(0.5, i) == doctest::Approx(mid).epsilon(1e-12));
  CHECK(mid == doctest::Approx(0.900).epsilon(2e-3));
  CHECK_THROWS_AS(interp_toughness(-0.01, i), std::domain_error);
  CHECK_THROWS_AS(interp_toughness(1.01, i), std::domain_error);
}

TEST_CASE("toughness and strength are continuous and monotone") {
  const InterfaceStatic i = referenceMaterial().iface;
  double prev_g = interp_toughness(0.0, i);
  double prev_mu = interp_strength(0.0, i);
  for (int k = 1; k <= 1000; ++k) {
    const double B = k / 1000.0;
    const double g = interp_toughness(B, i);
    const double mu = interp_strength(B, i);
    CHECK(g >= prev_g);
    CHECK(mu >= prev_mu);
    CHECK(g - prev_g < 0.01 * (i.G_sc - i.G_Ic) + 1e-12);  // no jumps
    prev_g = g;
    prev_mu = mu;
  }
  CHECK(prev_g == doctest::Approx(i.G_sc));
  CHECK(prev_mu == doctest::Approx(i.tau_so));
}

TEST_CASE("strength interpolation") {
  const InterfaceStatic i = referenceMaterial().iface;
  CHECK(interp_strength(0.0, i) == doctest::Approx(32.6).epsilon(1e-12));
  CHECK(interp_strength(1.0, i) == doctest::Approx(98.0).epsilon(1e-12));
  const double mid = std::sqrt(32.6 * 32.6 + (98.0 * 98.0 - 32.6 * 32.6) * std::pow(0.5, 2.05));
  CHECK(interp_strength(0.5, i) == doctest::Approx(mid).epsilon(1e-12));
  CHECK(mid == doctest::Approx(56.0).epsilon(5e-3));
}

TEST_CASE("tensile strength derivation") {
  CHECK(derive_tensile_strength(98.0, 0.305, 2.77) == doctest::Approx(32.5).epsilon(2e-3));
  CHECK(derive_tensile_strength(77.0, 0.9, 0.9) == doctest::Approx(77.0).epsilon(1e-12));
  CHECK(derive_tensile_strength(1.0, 0.25, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(derive_tensile_strength(-1.0, 0.3, 2.0), std::domain_error);
}

TEST_CASE("derived strength round-trips through the interpolation") {
  InterfaceStatic i = referenceMaterial().iface;
  i.tau_Io = derive_tensile_strength(i.tau_so, i.G_Ic, i.G_sc);
  CHECK(interp_strength(0.0, i) == doctest::Approx(i.tau_Io).epsilon(1e-14));
}

TEST_CASE("growth-law parameter interpolation") {
  const FatigueProps f = referenceMaterial().fatigue;
  const ParisParams p0 = interp_paris(0.0, f);
  CHECK(testutil::relErr(p0.p, 8.39) < 1e-12);
  CHECK(testutil::relErr(p0.A, 6.45e-2) < 1e-12);
  const ParisParams p1 = interp_paris(1.0, f);
  CHECK(testutil::relErr(p1.p, 3.62) < 1e-12);
  CHECK(testutil::relErr(p1.A, 7.03e-1) < 1e-12);

  const ParisParams pm = interp_paris(0.5, f);
  const double p_want = 0.25 * (3.62 - 8.39 - (-6.20)) + 0.5 * (-6.20) + 8.39;
  const double logA_want = 0.25 * std::log10(7.03e-1 / (1.28e5 * 6.45e-2)) +
                           0.5 * std::log10(1.28e5) + std::log10(6.45e-2);
  CHECK(pm.p == doctest::Approx(p_want).epsilon(1e-12));
  CHECK(pm.A == doctest::Approx(std::pow(10.0, logA_want)).epsilon(1e-12));
  CHECK(pm.p == doctest::Approx(5.65).epsilon(1e-3));
  CHECK(pm.A == doctest::Approx(2.22).epsilon(5e-3));

  CHECK_THROWS_AS(interp_paris(-0.1, f), std::domain_error);
  FatigueProps bad = f;
  bad.A_m = 0.0;
  CHECK_THROWS_AS(interp_paris(0.5, bad), std::domain_error);
}

TEST_CASE("threshold interpolation: linear fallback and power rule") {
  FatigueProps f = referenceMaterial().fatigue;
  REQUIRE(!f.eta2.has_value());
  CHECK(interp_threshold(0.0, f) == doctest::Approx(8.54e-2).epsilon(1e-12));
  CHECK(interp_threshold(1.0, f) == doctest::Approx(8.29e-2).epsilon(1e-12));
  CHECK(interp_threshold(0.5, f) == doctest::Approx(8.415e-2).epsilon(1e-12));

  f.eta2 = 2.0;
  CHECK(interp_threshold(0.5, f) ==
        doctest::Approx(8.54e-2 + (8.29e-2 - 8.54e-2) * 0.25).epsilon(1e-12));
  CHECK(interp_threshold(0.0, f) == doctest::Approx(8.54e-2).epsilon(1e-12));
  CHECK(interp_threshold(1.0, f) == doctest::Approx(8.29e-2).epsilon(1e-12));
}

TEST_CASE("bulk elastic validation") {
  BulkElastic b = referenceMaterial().bulk;
  CHECK_NOTHROW(b.validate());
  BulkElastic bad = b;
  bad.nu23 = 0.6;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = b;
  bad.E11 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("interface data validation flags inconsistent tensile strength") {
  InterfaceStatic i = referenceMaterial().iface;
  CHECK_NOTHROW(i.validate());
  i.tau_Io = 60.0;  // far from tau_so*sqrt(G_Ic/G_sc)
  CHECK_THROWS_AS(i.validate(), std::domain_error);
}

}  // TEST_SUITE
