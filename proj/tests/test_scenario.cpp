#include <cmath>

#include <doctest.h>

#include "delam/assembly.hpp"
#include "delam/scenario.hpp"
#include "helpers.hpp"

using namespace delam;
using testutil::referenceMaterial;

namespace {

ScenarioSpec smallSpec(const std::string& name) {
  ScenarioSpec s;
  s.specimen = name;
  s.length = 60.0;
  s.insert_length = 20.0;
  s.le = 0.5;
  s.thickness_elems = 2;
  s.support_margin = 10.0;
  if (name == "reinforced-dcb3d") {
    s.length = 24.0;
    s.width = 8.0;
    s.insert_length = 6.0;
    s.le = 1.0;
    s.le_w = 1.0;
    s.reinf_start = 14.0;
  }
  return s;
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("DCB mesh counts and insert seeding") {
  const Scenario sc = build_scenario(smallSpec("dcb2d"));
  const long nx = std::lround(60.0 / 0.5);
  CHECK(static_cast<long>(sc.mesh.cohesive.size()) == nx);
  CHECK(sc.mesh.iface_ni == nx);
  CHECK(sc.element_length == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(static_cast<long>(sc.initially_damaged.size()) == std::lround(20.0 / 0.5));
  // Interface nodes are duplicated between the arms.
  CHECK(static_cast<long>(sc.mesh.nodes.size()) == 2 * (nx + 1) * 3);
  CHECK(static_cast<long>(sc.mesh.bulk.size()) == 2 * 2 * nx);
  CHECK(sc.force_scale == doctest::Approx(sc.spec.width));
  CHECK(sc.reaction_dofs.size() == 1);
  sc.mesh.validate();
}

TEST_CASE("all specimens admit the trivial zero-load equilibrium") {
  for (const char* name : {"dcb2d", "enf2d", "mmb2d", "reinforced-dcb3d"}) {
    CAPTURE(name);
    const Scenario sc = build_scenario(smallSpec(name));
    FESystem fe(sc.mesh, referenceMaterial());
    fe.setDirichlet(sc.dirichlet);
    fe.setConstraints(sc.constraints);
    AnalysisState st = fe.initialState();
    const auto rep = fe.solve(st, 0.0);
    CHECK(rep.converged);
    CHECK(st.u.cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("ENF reports a positive center force under downward deflection") {
  const Scenario sc = build_scenario(smallSpec("enf2d"));
  FESystem fe(sc.mesh, referenceMaterial());
  fe.setDirichlet(sc.dirichlet);
  AnalysisState st = fe.initialState();
  const int nip = fe.numPointsPerElement();
  for (int e : sc.initially_damaged)
    for (int ip = 0; ip < nip; ++ip) st.points[e * nip + ip].DK = 1.0;
  REQUIRE(fe.solve(st, 0.05).converged);  // small elastic deflection
  const double f = fe.reactionSum(st, sc.reaction_dofs) * sc.force_scale;
  CHECK(f > 0.0);
}

TEST_CASE("MMB lever arm reproduces the target mode ratios") {
  auto lever = [&](double phi) {
    ScenarioSpec s = smallSpec("mmb2d");
    s.phi_target = phi;
    const Scenario sc = build_scenario(s);
    REQUIRE(sc.constraints.size() == 1);
    REQUIRE(sc.constraints[0].terms.size() == 2);
    const double L = 0.5 * (s.length - 2.0 * s.support_margin);
    // terms: (mid, -(c+L)/L), (end, c/L).
    const double c = sc.constraints[0].terms[1].second * L;
    CHECK(sc.constraints[0].terms[0].second ==
          doctest::Approx(-(c + L) / L).epsilon(1e-12));
    return c / L;
  };
  CHECK(lever(0.5) == doctest::Approx(0.8745).epsilon(1e-3));
  CHECK(lever(0.75) == doctest::Approx(0.6).epsilon(1e-9));
}

TEST_CASE("MMB equilibrium reports the lever force through the multiplier") {
  const Scenario sc = build_scenario(smallSpec("mmb2d"));
  FESystem fe(sc.mesh, referenceMaterial());
  fe.setDirichlet(sc.dirichlet);
  fe.setConstraints(sc.constraints);
  AnalysisState st = fe.initialState();
  const int nip = fe.numPointsPerElement();
  for (int e : sc.initially_damaged)
    for (int ip = 0; ip < nip; ++ip) st.points[e * nip + ip].DK = 1.0;
  REQUIRE(fe.solve(st, 0.05).converged);
  REQUIRE(st.multipliers.size() == 1);
  // Reported specimen force (lever load) is positive for a downward stroke.
  CHECK(st.multipliers(0) * sc.force_scale > 0.0);
}

TEST_CASE("3D reinforced specimen topology") {
  const ScenarioSpec s = smallSpec("reinforced-dcb3d");
  const Scenario sc = build_scenario(s);
  const long nx = std::lround(s.length / s.le);
  const long ny = std::lround(0.5 * s.width / s.le_w);
  const long ir = std::lround(s.reinf_start / s.le);
  CHECK(static_cast<long>(sc.mesh.cohesive.size()) == nx * ny);
  CHECK(static_cast<long>(sc.mesh.bulk.size()) == 2 * nx * ny + 2 * (nx - ir) * ny);
  CHECK(static_cast<long>(sc.initially_damaged.size()) ==
        std::lround(s.insert_length / s.le) * ny);
  CHECK(sc.force_scale == doctest::Approx(2.0));
  CHECK(sc.mesh.iface_ni == nx);
  CHECK(sc.mesh.iface_nj == ny);
  sc.mesh.validate();

  // Reinforcement shares the arm outer-face nodes: every reinforcement hex
  // must reference nodes of the full planes.
  const long plane = (nx + 1) * (ny + 1);
  int shared = 0;
  for (const auto& e : sc.mesh.bulk)
    for (int a = 0; a < 8; ++a)
      if (e[a] >= 4 * plane) {
        ++shared;
        break;
      }
  CHECK(shared == 2 * (nx - ir) * ny);
}

TEST_CASE("specification validation rejects inconsistent geometry") {
  ScenarioSpec s = smallSpec("dcb2d");
  s.specimen = "cantilever";
  CHECK_THROWS_AS(build_scenario(s), std::domain_error);

  s = smallSpec("dcb2d");
  s.insert_length = 80.0;  // longer than the specimen
  CHECK_THROWS_AS(build_scenario(s), std::domain_error);

  s = smallSpec("dcb2d");
  s.thickness_elems = 3;  // must be even
  CHECK_THROWS_AS(build_scenario(s), std::domain_error);

  s = smallSpec("reinforced-dcb3d");
  s.reinf_start = 4.0;  // inside the insert
  CHECK_THROWS_AS(build_scenario(s), std::domain_error);

  s = smallSpec("enf2d");
  s.support_margin = 40.0;  // no span left
  CHECK_THROWS_AS(build_scenario(s), std::domain_error);
}

}  // TEST_SUITE
