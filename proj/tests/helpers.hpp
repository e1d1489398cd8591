#pragma once

// Shared fixtures for the unit tests: reference material data and
// finite-difference utilities.

#include <functional>
#include <random>

#include "delam/material.hpp"

namespace testutil {

/// Carbon-epoxy reference data used throughout the test suite.
inline delam::MaterialSet referenceMaterial() {
  delam::MaterialSet m;
  m.bulk.E11 = 154000.0;
  m.bulk.E22 = 8500.0;
  m.bulk.E33 = 8500.0;
  m.bulk.G12 = 4200.0;
  m.bulk.G13 = 4200.0;
  m.bulk.G23 = 3040.0;
  m.bulk.nu12 = 0.35;
  m.bulk.nu13 = 0.35;
  m.bulk.nu23 = 0.4;
  m.iface.G_Ic = 0.305;
  m.iface.G_sc = 2.77;
  m.iface.eta = 2.05;
  m.iface.tau_Io = 32.6;
  m.iface.tau_so = 98.0;
  m.iface.K = 1e5;
  m.fatigue.p_I = 8.39;
  m.fatigue.A_I = 6.45e-2;
  m.fatigue.p_s = 3.62;
  m.fatigue.A_s = 7.03e-1;
  m.fatigue.p_m = -6.20;
  m.fatigue.A_m = 1.28e5;
  m.fatigue.G_Ith = 8.54e-2;
  m.fatigue.G_sth = 8.29e-2;
  return m;
}

/// Central finite difference with a relative step.
inline double fdCentral(const std::function<double(double)>& f, double x,
                        double h_rel = 1e-6) {
  const double h = std::max(std::abs(x), 1e-6) * h_rel;
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double relErr(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-30);
  return std::abs(got - want) / scale;
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240915u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

}  // namespace testutil
