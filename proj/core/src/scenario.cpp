#include "delam/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace delam {

namespace {

long roundCount(double extent, double h, const char* what) {
  const long n = std::lround(extent / h);
  if (n < 2) throw std::domain_error(std::string(what) + ": fewer than two elements");
  return n;
}

/// Two stacked arms of plane-strain quads separated by a full-length row of
/// cohesive elements. Returns the scenario with mesh and interface grid set;
/// boundary conditions are added by the callers.
Scenario buildTwoArm2d(const ScenarioSpec& spec) {
  Scenario sc;
  sc.spec = spec;
  Mesh& m = sc.mesh;
  m.dim = 2;

  const long nx = roundCount(spec.length, spec.le, "length");
  const double dx = spec.length / static_cast<double>(nx);
  const int ny = spec.thickness_elems;
  if (ny < 1 || ny % 2 != 0)
    throw std::domain_error("thickness_elems must be even and positive");
  const double t = spec.arm_thickness;
  const double dy = t / ny;

  const long row = nx + 1;
  const long per_arm = row * (ny + 1);
  // Lower arm nodes j=0..ny bottom-up ending at y=0, then the upper arm
  // j=0..ny starting at its own y=0 row (interface nodes are duplicated).
  for (int arm = 0; arm < 2; ++arm) {
    const double y0 = arm == 0 ? -t : 0.0;
    for (int j = 0; j <= ny; ++j)
      for (long i = 0; i <= nx; ++i)
        m.nodes.emplace_back(i * dx, y0 + j * dy, 0.0);
  }
  auto L = [&](long i, int j) { return static_cast<int>(j * row + i); };
  auto U = [&](long i, int j) { return static_cast<int>(per_arm + j * row + i); };

  for (int arm = 0; arm < 2; ++arm) {
    const long off = arm * per_arm;
    for (int j = 0; j < ny; ++j)
      for (long i = 0; i < nx; ++i) {
        std::array<int, 8> e{};
        e[0] = static_cast<int>(off + j * row + i);
        e[1] = static_cast<int>(off + j * row + i + 1);
        e[2] = static_cast<int>(off + (j + 1) * row + i + 1);
        e[3] = static_cast<int>(off + (j + 1) * row + i);
        m.bulk.push_back(e);
      }
  }

  m.iface_ni = static_cast<int>(nx);
  m.iface_nj = 1;
  m.iface_grid.resize(nx);
  for (long i = 0; i < nx; ++i) {
    std::array<int, 8> e{};
    e[0] = L(i, ny);
    e[1] = L(i + 1, ny);
    e[2] = U(i, 0);
    e[3] = U(i + 1, 0);
    m.cohesive.push_back(e);
    m.iface_grid[i] = static_cast<int>(i);
    const double xc = (i + 0.5) * dx;
    if (xc < spec.insert_length) sc.initially_damaged.push_back(static_cast<int>(i));
  }

  m.node_sets["lower_pin"] = {L(0, ny / 2)};
  m.node_sets["upper_pin"] = {U(0, ny / 2)};
  sc.element_length = dx;
  return sc;
}

long nearestIndex(double x, double dx) { return std::lround(x / dx); }

void addSimpleSupports(Scenario& sc, double* half_span_out, long* center_i_out) {
  const ScenarioSpec& spec = sc.spec;
  Mesh& m = sc.mesh;
  const long nx = m.iface_ni;
  const double dx = spec.length / static_cast<double>(nx);
  const double span = spec.length - 2.0 * spec.support_margin;
  if (span <= 0.0) throw std::domain_error("support_margin: no span left between supports");
  const long i1 = nearestIndex(spec.support_margin, dx);
  const long i2 = nearestIndex(spec.support_margin + span, dx);
  const long ic = nearestIndex(spec.support_margin + 0.5 * span, dx);
  const long row = nx + 1;

  // Bottom fiber of the lower arm (j = 0).
  const int s1 = static_cast<int>(i1);
  const int s2 = static_cast<int>(i2);
  sc.dirichlet.push_back({2 * s1 + 1, 0.0});
  sc.dirichlet.push_back({2 * s2 + 1, 0.0});
  sc.dirichlet.push_back({2 * s1, 0.0});
  m.node_sets["support_1"] = {s1};
  m.node_sets["support_2"] = {s2};

  const int ny = spec.thickness_elems;
  const long per_arm = row * (ny + 1);
  const int top_center = static_cast<int>(per_arm + ny * row + ic);
  m.node_sets["load_point"] = {top_center};
  *half_span_out = 0.5 * span;
  *center_i_out = ic;
}

Scenario buildDcb2d(const ScenarioSpec& spec) {
  Scenario sc = buildTwoArm2d(spec);
  const int lo = sc.mesh.node_sets.at("lower_pin")[0];
  const int up = sc.mesh.node_sets.at("upper_pin")[0];
  // Load factor = total opening displacement at the pins.
  sc.dirichlet.push_back({2 * lo + 1, -0.5});
  sc.dirichlet.push_back({2 * up + 1, 0.5});
  sc.dirichlet.push_back({2 * lo, 0.0});
  sc.dirichlet.push_back({2 * up, 0.0});
  sc.reaction_dofs = {2 * up + 1};
  sc.force_scale = spec.width;
  return sc;
}

Scenario buildEnf2d(const ScenarioSpec& spec) {
  Scenario sc = buildTwoArm2d(spec);
  double half_span = 0;
  long ic = 0;
  addSimpleSupports(sc, &half_span, &ic);
  const int load_node = sc.mesh.node_sets.at("load_point")[0];
  // Load factor = downward center deflection.
  sc.dirichlet.push_back({2 * load_node + 1, -1.0});
  sc.reaction_dofs = {2 * load_node + 1};
  sc.force_scale = -spec.width;  // reaction is downward; report positive force
  return sc;
}

Scenario buildMmb2d(const ScenarioSpec& spec) {
  Scenario sc = buildTwoArm2d(spec);
  double half_span = 0;
  long ic = 0;
  addSimpleSupports(sc, &half_span, &ic);

  if (spec.phi_target <= 0.0 || spec.phi_target >= 1.0)
    throw std::domain_error("phi_target must lie strictly between 0 and 1");
  // Lever arm from the target ratio G_I/G_II = (4/3)*((3c-L)/(c+L))^2.
  const double r = (1.0 - spec.phi_target) / spec.phi_target;
  const double k = 0.5 * std::sqrt(3.0 * r);
  if (k >= 3.0) throw std::domain_error("phi_target too low for a rigid-lever setup");
  const double c = half_span * (1.0 + k) / (3.0 - k);

  const int mid = sc.mesh.node_sets.at("load_point")[0];
  const int end = sc.mesh.node_sets.at("upper_pin")[0];
  // Rigid lever: downward (c+L)/L at mid-span, upward c/L at the cracked
  // end, driven by the lever-point displacement (load factor, downward).
  LinearConstraint lever;
  lever.terms = {{2 * mid + 1, -(c + half_span) / half_span},
                 {2 * end + 1, c / half_span}};
  lever.scale = 1.0;
  sc.constraints.push_back(lever);
  // The multiplier works against the constraint gradient, so it carries
  // minus the lever force per unit width; report the force positive.
  sc.force_scale = -spec.width;
  return sc;
}

Scenario buildReinforcedDcb3d(const ScenarioSpec& spec) {
  Scenario sc;
  sc.spec = spec;
  Mesh& m = sc.mesh;
  m.dim = 3;

  const long nx = roundCount(spec.length, spec.le, "length");
  const long ny = roundCount(0.5 * spec.width, spec.le_w, "width");
  const double dx = spec.length / static_cast<double>(nx);
  const double dy = 0.5 * spec.width / static_cast<double>(ny);
  const double t = spec.arm_thickness;
  const double tr = spec.reinf_thickness;
  const long ir = nearestIndex(spec.reinf_start, dx);
  if (ir < 0 || ir >= nx) throw std::domain_error("reinf_start outside the specimen");

  const long row = nx + 1;
  const long plane = row * (ny + 1);
  // Four full node planes: lower-arm bottom (z=-t), lower interface (z=0),
  // upper interface (z=0), upper-arm top (z=+t); then two partial planes
  // for the reinforcement sub-laminates where x >= reinf_start.
  const double zs[4] = {-t, 0.0, 0.0, t};
  for (int p = 0; p < 4; ++p)
    for (long j = 0; j <= ny; ++j)
      for (long i = 0; i <= nx; ++i)
        m.nodes.emplace_back(i * dx, j * dy, zs[p]);
  const long reinf_row = nx - ir + 1;
  const long reinf_off[2] = {4 * plane, 4 * plane + reinf_row * (ny + 1)};
  const double zr[2] = {-t - tr, t + tr};
  for (int p = 0; p < 2; ++p)
    for (long j = 0; j <= ny; ++j)
      for (long i = ir; i <= nx; ++i)
        m.nodes.emplace_back(i * dx, j * dy, zr[p]);

  auto P = [&](int p, long i, long j) { return static_cast<int>(p * plane + j * row + i); };
  auto RN = [&](int p, long i, long j) {
    return static_cast<int>(reinf_off[p] + j * reinf_row + (i - ir));
  };

  auto pushHex = [&](int b0, int b1, int b2, int b3, int t0, int t1, int t2, int t3) {
    m.bulk.push_back({b0, b1, b2, b3, t0, t1, t2, t3});
  };
  for (long j = 0; j < ny; ++j)
    for (long i = 0; i < nx; ++i) {
      // Arms: bottom plane 0 -> plane 1, plane 2 -> plane 3.
      pushHex(P(0, i, j), P(0, i + 1, j), P(0, i + 1, j + 1), P(0, i, j + 1),
              P(1, i, j), P(1, i + 1, j), P(1, i + 1, j + 1), P(1, i, j + 1));
      pushHex(P(2, i, j), P(2, i + 1, j), P(2, i + 1, j + 1), P(2, i, j + 1),
              P(3, i, j), P(3, i + 1, j), P(3, i + 1, j + 1), P(3, i, j + 1));
      if (i >= ir) {
        pushHex(RN(0, i, j), RN(0, i + 1, j), RN(0, i + 1, j + 1), RN(0, i, j + 1),
                P(0, i, j), P(0, i + 1, j), P(0, i + 1, j + 1), P(0, i, j + 1));
        pushHex(P(3, i, j), P(3, i + 1, j), P(3, i + 1, j + 1), P(3, i, j + 1),
                RN(1, i, j), RN(1, i + 1, j), RN(1, i + 1, j + 1), RN(1, i, j + 1));
      }
    }

  m.iface_ni = static_cast<int>(nx);
  m.iface_nj = static_cast<int>(ny);
  m.iface_grid.resize(nx * ny);
  for (long j = 0; j < ny; ++j)
    for (long i = 0; i < nx; ++i) {
      std::array<int, 8> e{P(1, i, j),     P(1, i + 1, j), P(1, i + 1, j + 1),
                           P(1, i, j + 1), P(2, i, j),     P(2, i + 1, j),
                           P(2, i + 1, j + 1), P(2, i, j + 1)};
      const int id = static_cast<int>(m.cohesive.size());
      m.cohesive.push_back(e);
      m.iface_grid[j * nx + i] = id;
      if ((i + 0.5) * dx < spec.insert_length) sc.initially_damaged.push_back(id);
    }

  // Symmetry plane y = 0.
  for (size_t n = 0; n < m.nodes.size(); ++n)
    if (std::abs(m.nodes[n](1)) < 1e-12) sc.dirichlet.push_back({static_cast<int>(n) * 3 + 1, 0.0});

  // Opening load along the arm-end fibers at x = 0 (outer faces).
  std::vector<int> lower_line, upper_line;
  for (long j = 0; j <= ny; ++j) {
    lower_line.push_back(P(0, 0, j));
    upper_line.push_back(P(3, 0, j));
  }
  for (int n : lower_line) {
    sc.dirichlet.push_back({3 * n + 2, -0.5});
    sc.dirichlet.push_back({3 * n, 0.0});
  }
  for (int n : upper_line) {
    sc.dirichlet.push_back({3 * n + 2, 0.5});
    sc.dirichlet.push_back({3 * n, 0.0});
    sc.reaction_dofs.push_back(3 * n + 2);
  }
  m.node_sets["lower_pin"] = lower_line;
  m.node_sets["upper_pin"] = upper_line;
  sc.force_scale = 2.0;  // half width modeled
  sc.element_length = dx;
  return sc;
}

}  // namespace

void ScenarioSpec::validate() const {
  if (specimen != "dcb2d" && specimen != "enf2d" && specimen != "mmb2d" &&
      specimen != "reinforced-dcb3d")
    throw std::domain_error("unknown specimen type: " + specimen);
  if (length <= 0 || width <= 0 || arm_thickness <= 0)
    throw std::domain_error("specimen dimensions must be positive");
  if (le <= 0 || le >= length) throw std::domain_error("le must lie in (0, length)");
  if (insert_length <= 0 || insert_length >= length)
    throw std::domain_error("insert_length must lie in (0, length)");
  if (da_target <= 0) throw std::domain_error("da_target must be positive");
  if (specimen == "reinforced-dcb3d") {
    if (le_w <= 0 || le_w >= width) throw std::domain_error("le_w must lie in (0, width)");
    if (reinf_thickness <= 0) throw std::domain_error("reinf_thickness must be positive");
    if (reinf_start <= insert_length || reinf_start >= length)
      throw std::domain_error("reinf_start must lie between the insert tip and the far end");
  }
}

Scenario build_scenario(const ScenarioSpec& spec) {
  spec.validate();
  Scenario sc;
  if (spec.specimen == "dcb2d")
    sc = buildDcb2d(spec);
  else if (spec.specimen == "enf2d")
    sc = buildEnf2d(spec);
  else if (spec.specimen == "mmb2d")
    sc = buildMmb2d(spec);
  else
    sc = buildReinforcedDcb3d(spec);
  sc.mesh.validate();
  return sc;
}

}  // namespace delam
