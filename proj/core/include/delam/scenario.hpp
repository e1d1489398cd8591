#pragma once

// Built-in coupon specimen factories: 2D DCB/ENF/MMB and the partially
// reinforced 3D DCB. All geometry in mm.

#include <string>
#include <vector>

#include "delam/assembly.hpp"
#include "delam/mesh.hpp"

namespace delam {

struct ScenarioSpec {
  std::string specimen = "dcb2d";  // dcb2d | enf2d | mmb2d | reinforced-dcb3d
  double length = 150.0;           // specimen length
  double width = 25.0;             // full width (2D force scaling; 3D models half)
  double arm_thickness = 2.944;    // one sub-laminate (16 plies x 0.184)
  double insert_length = 35.0;     // unbonded insert measured from x = 0
  double le = 0.2;                 // cohesive element length along X1
  double le_w = 0.2;               // cohesive element width along X2 (3D)
  int thickness_elems = 4;         // bulk element rows per arm (2D)
  double da_target = 0.2;          // crack increment target for the cycle jump
  double phi_target = 0.5;         // MMB nominal mode mixity
  double support_margin = 10.0;    // ENF/MMB overhang beyond the supports
  double reinf_start = 110.0;      // 3D: reinforcement start along X1
  double reinf_thickness = 1.472;  // 3D: reinforcement sub-laminate (8 plies)

  void validate() const;
};

struct Scenario {
  Mesh mesh;
  std::vector<Dirichlet> dirichlet;           // scale applied per load factor
  std::vector<LinearConstraint> constraints;  // MMB lever
  std::vector<int> reaction_dofs;             // reactions summed for the force record
  std::vector<int> initially_damaged;         // cohesive elements in the insert
  double force_scale = 1.0;   // per-unit-width force to specimen force (2D)
  double element_length = 0;  // cohesive L_e along the growth direction
  ScenarioSpec spec;
};

Scenario build_scenario(const ScenarioSpec& spec);

}  // namespace delam
