// Microbenchmarks for the hot paths: cohesive point evaluation, damage-rate
// kernel, element stiffness, and a full equilibrium solve on a small DCB.

#include <benchmark/benchmark.h>

#include "delam/cohesive_law.hpp"
#include "delam/fatigue.hpp"
#include "delam/scenario.hpp"

namespace {

delam::MaterialSet testMaterial() {
  delam::MaterialSet m;
  m.bulk = {154000, 8500, 8500, 4200, 4200, 3040, 0.35, 0.35, 0.4};
  m.iface.G_Ic = 0.305;
  m.iface.G_sc = 2.77;
  m.iface.eta = 2.05;
  m.iface.tau_so = 98.0;
  m.iface.tau_Io = delam::derive_tensile_strength(98.0, 0.305, 2.77);
  m.iface.K = 1e5;
  m.fatigue = {8.39, 6.45e-2, 3.62, 7.03e-1, -6.20, 1.28e5, 8.54e-2, 8.29e-2, {}};
  return m;
}

void BM_CohesivePoint(benchmark::State& state) {
  const delam::MaterialSet m = testMaterial();
  delam::DisplacementJump j{1.2e-3, 0.0, 2.5e-3};
  for (auto _ : state) {
    const auto dec = delam::decompose_jump(j);
    const double mu = delam::interp_strength(dec.B, m.iface);
    const double gc = delam::interp_toughness(dec.B, m.iface);
    const auto oc = delam::onset_critical(mu, gc, m.iface.K);
    const double DK = delam::static_damage_envelope(dec.lambda, oc.lambda_o, oc.lambda_c);
    benchmark::DoNotOptimize(delam::traction(j, DK, m.iface.K));
    benchmark::DoNotOptimize(delam::energy_state(DK, dec.B, m.iface));
  }
}
BENCHMARK(BM_CohesivePoint);

void BM_DamageRateKernel(benchmark::State& state) {
  const delam::MaterialSet m = testMaterial();
  delam::CohesivePointState ps;
  ps.DK = 0.4;
  for (auto _ : state) {
    delam::CohesivePointState p = ps;
    delam::damage_increment(p, {2.0e-3, 0.3, 0.05, 0.2}, m.iface, 1e-4, 100.0);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_DamageRateKernel);

void BM_DcbEquilibrium(benchmark::State& state) {
  delam::ScenarioSpec spec;
  spec.specimen = "dcb2d";
  spec.length = 60;
  spec.insert_length = 30;
  spec.le = 0.5;
  spec.thickness_elems = 2;
  const delam::Scenario sc = delam::build_scenario(spec);
  delam::FESystem sys(sc.mesh, testMaterial());
  sys.setDirichlet(sc.dirichlet);
  for (auto _ : state) {
    auto st = sys.initialState();
    benchmark::DoNotOptimize(sys.solve(st, 1.0));
  }
}
BENCHMARK(BM_DcbEquilibrium)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
