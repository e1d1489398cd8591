#include "delam/front.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace delam {

namespace {
constexpr double kZoneLo = 1e-6;        // DK below this counts as intact
constexpr double kZoneHi = 1.0 - 1e-6;  // DK above this counts as fully open
// Minimum meaningful specific-work variation across one element. Near full
// decohesion the work profile saturates; sub-tolerance wiggles there would
// otherwise flip the growth direction. Such points fall back to the nearest
// resolved direction.
constexpr double kGradTol = 1e-3;
}  // namespace

JResult j_integral(const std::vector<PathStation>& stations) {
  if (stations.size() < 2)
    throw std::runtime_error("j_integral: path has fewer than two stations");
  JResult r;
  auto term_I = [](const PathStation& s) {
    return s.delta3 > 0.0 ? std::max(s.t_loc(2), 0.0) * s.ddelta_dx1(2) : 0.0;
  };
  for (size_t k = 0; k + 1 < stations.size(); ++k) {
    const auto& a = stations[k];
    const auto& b = stations[k + 1];
    const double dx = b.x1 - a.x1;
    r.J_I += 0.5 * (term_I(a) + term_I(b)) * dx;
    r.J_II += 0.5 * (a.t_loc(0) * a.ddelta_dx1(0) + b.t_loc(0) * b.ddelta_dx1(0)) * dx;
    r.J_III += 0.5 * (a.t_loc(1) * a.ddelta_dx1(1) + b.t_loc(1) * b.ddelta_dx1(1)) * dx;
  }
  r.G_max = r.J_I + r.J_II + r.J_III;
  r.Phi = r.G_max > 1e-14 ? std::clamp((r.J_II + r.J_III) / r.G_max, 0.0, 1.0) : 0.0;
  return r;
}

FrontAnalyzer::FrontAnalyzer(const FESystem& sys) : sys_(sys) {
  const Mesh& m = sys.mesh();
  ni_ = m.iface_ni;
  nj_ = m.dim == 2 ? 0 : m.iface_nj;
  if (ni_ <= 0) throw std::runtime_error("FrontAnalyzer: mesh has no interface grid");
  nni_ = ni_ + 1;
  nnj_ = nj_ + 1;
  for (int c = 0; c < ni_ * std::max(1, nj_); ++c)
    if (m.iface_grid[c] < 0)
      throw std::runtime_error("FrontAnalyzer: interface grid has holes");

  // In-plane axes from the reference frame of the first cohesive element.
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(m.numDofs());
  const auto kin = cohesive_kinematics(m, m.iface_grid[0], zero);
  s1_ = kin.pt[0].tangent[0];
  nrm_ = kin.pt[0].R.row(2);
  s2_ = m.dim == 2 ? Eigen::Vector3d(kin.pt[0].R.row(1)) : nrm_.cross(s1_).normalized();
}

int FrontAnalyzer::cornerNode(int i, int j, int corner) const {
  if (sys_.mesh().dim == 2) return corner == 0 ? i : i + 1;
  switch (corner) {
    case 0: return idx(i, j);
    case 1: return idx(i + 1, j);
    case 2: return idx(i + 1, j + 1);
    default: return idx(i, j + 1);
  }
}

void FrontAnalyzer::buildGridFields(const AnalysisState& state) {
  const Mesh& m = sys_.mesh();
  const int nip = sys_.numPointsPerElement();
  const int ngn = nni_ * nnj_;
  coord_.assign(ngn, Eigen::Vector3d::Zero());
  jump_.assign(ngn, Eigen::Vector3d::Zero());
  djump_.assign(ngn, Eigen::Matrix<double, 3, 2>::Zero());
  DK_.assign(ngn, 0.0);
  phi_.assign(ngn, 0.0);
  std::vector<int> count(ngn, 0);

  for (int j = 0; j < std::max(1, nj_); ++j)
    for (int i = 0; i < ni_; ++i) {
      const int e = m.iface_grid[j * ni_ + i];
      const auto kin = cohesive_kinematics(m, e, state.u);
      for (int ip = 0; ip < nip; ++ip) {
        const int g = cornerNode(i, j, ip);
        const auto& st = state.points[e * nip + ip];
        coord_[g] += kin.pt[ip].coord;
        const Eigen::Vector3d d(kin.pt[ip].jump.d1, kin.pt[ip].jump.d2, kin.pt[ip].jump.d3);
        jump_[g] += kin.pt[ip].R.transpose() * d;
        Eigen::Matrix<double, 3, 2> dj;
        dj.col(0) = cohesive_jump_gradient(m, e, ip, state.u, s1_);
        dj.col(1) = m.dim == 2 ? Eigen::Vector3d::Zero()
                               : cohesive_jump_gradient(m, e, ip, state.u, s2_);
        djump_[g] += dj;
        DK_[g] += st.DK;
        const double Gc = interp_toughness(st.B_at_update, sys_.material().iface);
        phi_[g] += st.omega_tot / Gc;
        ++count[g];
      }
    }
  for (int g = 0; g < ngn; ++g) {
    if (count[g] == 0) throw std::runtime_error("FrontAnalyzer: orphan grid node");
    const double w = 1.0 / count[g];
    coord_[g] *= w;
    jump_[g] *= w;
    djump_[g] *= w;
    DK_[g] *= w;
    phi_[g] *= w;
  }
  xs_.resize(nni_);
  ys_.resize(nnj_);
  for (int i = 0; i < nni_; ++i) xs_[i] = coord_[idx(i, 0)].dot(s1_);
  for (int j = 0; j < nnj_; ++j) ys_[j] = coord_[idx(0, j)].dot(s2_);
  noff_ = coord_[0].dot(nrm_);
}

void FrontAnalyzer::computeGdd(const AnalysisState& state) {
  const Mesh& m = sys_.mesh();
  const int nip = sys_.numPointsPerElement();
  point_gdd_.assign(sys_.numPoints(), Eigen::Vector3d::Zero());
  point_has_gdd_.assign(sys_.numPoints(), 0);
  gdd_.assign(nni_ * nnj_, Eigen::Vector3d::Zero());
  has_gdd_.assign(nni_ * nnj_, 0);

  for (int j = 0; j < std::max(1, nj_); ++j)
    for (int i = 0; i < ni_; ++i) {
      const int e = m.iface_grid[j * ni_ + i];
      std::array<double, 4> nodal{};
      for (int c = 0; c < nip; ++c) nodal[c] = phi_[cornerNode(i, j, c)];
      const double span =
          std::max(xs_[i + 1] - xs_[i], nj_ > 0 ? ys_[j + 1] - ys_[j] : 0.0);
      for (int ip = 0; ip < nip; ++ip) {
        const Eigen::Vector3d g =
            cohesive_scalar_gradient(m, e, ip, state.u, nodal);
        const int q = e * nip + ip;
        if (g.norm() * span >= kGradTol) {
          point_gdd_[q] = g.normalized();
          point_has_gdd_[q] = 1;
          const int gn = cornerNode(i, j, ip);
          gdd_[gn] += point_gdd_[q];
        }
      }
    }
  for (int g = 0; g < nni_ * nnj_; ++g) {
    if (gdd_[g].norm() > 1e-12) {
      gdd_[g].normalize();
      has_gdd_[g] = 1;
    }
  }

  // Fallbacks for points without a usable gradient: nearest point that has
  // one, then the previous-increment direction, then the first in-plane axis.
  std::vector<int> with;
  for (int q = 0; q < sys_.numPoints(); ++q)
    if (point_has_gdd_[q]) with.push_back(q);
  std::vector<Eigen::Vector3d> pcoord(sys_.numPoints());
  for (int e = 0; e < static_cast<int>(m.cohesive.size()); ++e) {
    const auto kin = cohesive_kinematics(m, e, state.u);
    for (int ip = 0; ip < nip; ++ip) pcoord[e * nip + ip] = kin.pt[ip].coord;
  }
  for (int q = 0; q < sys_.numPoints(); ++q) {
    if (point_has_gdd_[q]) continue;
    double best = std::numeric_limits<double>::max();
    int arg = -1;
    for (int w : with) {
      const double d2 = (pcoord[w] - pcoord[q]).squaredNorm();
      if (d2 < best) {
        best = d2;
        arg = w;
      }
    }
    if (arg >= 0) {
      point_gdd_[q] = point_gdd_[arg];
    } else {
      const double a = state.points[q].gdd_angle;
      point_gdd_[q] = std::cos(a) * s1_ + std::sin(a) * s2_;
    }
  }
}

bool FrontAnalyzer::locate(const Eigen::Vector3d& p, int& ci, int& cj, double& fx,
                           double& fy) const {
  const double x = p.dot(s1_);
  const double y = p.dot(s2_);
  const double ex = 1e-9 * (xs_.back() - xs_.front() + 1.0);
  if (x < xs_.front() - ex || x > xs_.back() + ex) return false;
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  ci = std::clamp(static_cast<int>(it - xs_.begin()) - 1, 0, nni_ - 2);
  fx = std::clamp((x - xs_[ci]) / (xs_[ci + 1] - xs_[ci]), 0.0, 1.0);
  if (nnj_ == 1) {
    cj = 0;
    fy = 0.0;
    return true;
  }
  const double ey = 1e-9 * (ys_.back() - ys_.front() + 1.0);
  if (y < ys_.front() - ey || y > ys_.back() + ey) return false;
  auto jt = std::upper_bound(ys_.begin(), ys_.end(), y);
  cj = std::clamp(static_cast<int>(jt - ys_.begin()) - 1, 0, nnj_ - 2);
  fy = std::clamp((y - ys_[cj]) / (ys_[cj + 1] - ys_[cj]), 0.0, 1.0);
  return true;
}

template <typename T>
T FrontAnalyzer::bilinear(const std::vector<T>& f, int ci, int cj, double fx,
                          double fy) const {
  if (nnj_ == 1) return f[ci] * (1.0 - fx) + f[ci + 1] * fx;
  return f[idx(ci, cj)] * (1.0 - fx) * (1.0 - fy) + f[idx(ci + 1, cj)] * fx * (1.0 - fy) +
         f[idx(ci + 1, cj + 1)] * fx * fy + f[idx(ci, cj + 1)] * (1.0 - fx) * fy;
}

void FrontAnalyzer::tracePaths() {
  paths_.clear();
  const double hx = (xs_.back() - xs_.front()) / ni_;
  const double hy = nj_ > 0 ? (ys_.back() - ys_.front()) / nj_ : hx;
  const double h = 0.5 * std::min(hx, hy);
  const int max_stations = 8 * (ni_ + std::max(1, nj_));

  const double lambda_cut =
      0.02 * onset_critical(sys_.material().iface.tau_Io,
                            sys_.material().iface.G_Ic, sys_.material().iface.K)
                 .lambda_o;

  auto sample = [&](const Eigen::Vector3d& p, PathStation& st, Eigen::Vector3d& g,
                    double& lambda, const Eigen::Vector3d& gprev) -> bool {
    int ci, cj;
    double fx, fy;
    if (!locate(p, ci, cj, fx, fy)) return false;
    const Eigen::Vector3d jg = bilinear(jump_, ci, cj, fx, fy);
    const Eigen::Matrix<double, 3, 2> dj = bilinear(djump_, ci, cj, fx, fy);
    st.DK = bilinear(DK_, ci, cj, fx, fy);
    g = bilinear(gdd_, ci, cj, fx, fy);
    // Keep the march direction continuous: a local inversion of the work
    // profile (one lagging point pair mid-zone) can zero out or flip the
    // averaged direction for a single station, which would otherwise kill
    // or reverse the whole path.
    if (g.norm() < 1e-12 || g.dot(gprev) < 0.0) g = gprev;
    if (g.norm() < 1e-12) return false;
    g.normalize();
    // Crack frame: x1 along the work gradient, x3 the interface normal.
    Eigen::Matrix3d R;
    R.row(0) = g;
    R.row(2) = nrm_;
    R.row(1) = nrm_.cross(g);
    const Eigen::Vector3d d = R * jg;
    st.position = p;
    st.delta3 = d(2);
    lambda = decompose_jump(DisplacementJump{d(0), d(1), d(2)}).lambda;
    st.t_loc = traction(DisplacementJump{d(0), d(1), d(2)}, st.DK, sys_.material().iface.K);
    const Eigen::Vector2d a(g.dot(s1_), g.dot(s2_));
    st.ddelta_dx1 = R * (dj * a);
    return true;
  };

  // Seed one path per element row across the width: at the fully-open to
  // zone transition, or at the most damaged zone sample when no fully-open
  // region exists yet.
  for (int jr = 0; jr < std::max(1, nj_); ++jr) {
    const double yc = nj_ > 0 ? 0.5 * (ys_[jr] + ys_[jr + 1]) : 0.0;
    std::vector<double> dk_row(nni_);
    for (int i = 0; i < nni_; ++i) {
      int ci, cj;
      double fx, fy;
      Eigen::Vector3d pr = xs_[i] * s1_ + yc * s2_ + noff_ * nrm_;
      if (!locate(pr, ci, cj, fx, fy)) {
        dk_row[i] = 0.0;
        continue;
      }
      dk_row[i] = bilinear(DK_, ci, cj, fx, fy);
    }
    int seed_i = -1;
    for (int i = 0; i < nni_; ++i) {
      if (dk_row[i] <= kZoneLo || dk_row[i] >= kZoneHi) continue;
      const bool open_left = i > 0 && dk_row[i - 1] >= kZoneHi;
      const bool open_right = i + 1 < nni_ && dk_row[i + 1] >= kZoneHi;
      if (open_left || open_right) {
        seed_i = i;
        break;
      }
    }
    if (seed_i < 0) {
      double best = kZoneLo;
      for (int i = 0; i < nni_; ++i)
        if (dk_row[i] > best && dk_row[i] < kZoneHi) {
          best = dk_row[i];
          seed_i = i;
        }
    }
    if (seed_i < 0) continue;

    JPath path;
    Eigen::Vector3d p = xs_[seed_i] * s1_ + yc * s2_ + noff_ * nrm_;
    // Fallback march direction for the seed: toward the more damaged
    // neighbour along the row.
    double side = 0.0;
    if (seed_i > 0 && dk_row[seed_i - 1] > dk_row[seed_i]) side = -1.0;
    if (seed_i + 1 < nni_ && dk_row[seed_i + 1] > dk_row[seed_i] &&
        dk_row[seed_i + 1] > (seed_i > 0 ? dk_row[seed_i - 1] : 0.0))
      side = 1.0;
    Eigen::Vector3d gprev = side * s1_;
    std::vector<PathStation> march;
    for (int k = 0; k < max_stations; ++k) {
      PathStation st;
      Eigen::Vector3d g;
      double lambda = 0.0;
      if (!sample(p, st, g, lambda, gprev)) break;
      gprev = g;
      st.x1 = march.empty() ? 0.0 : march.back().x1 - h;
      march.push_back(st);
      if (st.DK <= kZoneLo && lambda < lambda_cut) break;
      p -= h * g;  // toward the intact side
    }
    if (march.size() < 2) continue;
    // Reorder stations from intact to open side with increasing x1.
    std::reverse(march.begin(), march.end());
    const double x0 = march.front().x1;
    for (auto& st : march) st.x1 -= x0;
    path.stations = std::move(march);
    const JResult r = j_integral(path.stations);
    path.J_I = r.J_I;
    path.J_II = r.J_II;
    path.J_III = r.J_III;
    path.G_max = r.G_max;
    path.Phi = r.Phi;
    paths_.push_back(std::move(path));
  }
}

void FrontAnalyzer::update(const AnalysisState& state) {
  buildGridFields(state);
  computeGdd(state);
  tracePaths();

  // Assign every cohesive-zone integration point to its nearest path.
  const Mesh& m = sys_.mesh();
  const int nip = sys_.numPointsPerElement();
  point_path_.assign(sys_.numPoints(), -1);
  for (int e = 0; e < static_cast<int>(m.cohesive.size()); ++e) {
    const auto kin = cohesive_kinematics(m, e, state.u);
    for (int ip = 0; ip < nip; ++ip) {
      const int q = e * nip + ip;
      const double dk = state.points[q].DK;
      if (dk <= kZoneLo || dk >= kZoneHi) continue;
      double best = std::numeric_limits<double>::max();
      int arg = -1;
      for (size_t pi = 0; pi < paths_.size(); ++pi) {
        for (size_t s = 0; s + 1 < paths_[pi].stations.size(); ++s) {
          const Eigen::Vector3d& a = paths_[pi].stations[s].position;
          const Eigen::Vector3d& b = paths_[pi].stations[s + 1].position;
          const Eigen::Vector3d ab = b - a;
          const double t = std::clamp(
              ab.squaredNorm() > 0 ? (kin.pt[ip].coord - a).dot(ab) / ab.squaredNorm() : 0.0,
              0.0, 1.0);
          const double d2 = (kin.pt[ip].coord - (a + t * ab)).squaredNorm();
          if (d2 < best) {
            best = d2;
            arg = static_cast<int>(pi);
          }
        }
      }
      point_path_[q] = arg;
      if (arg >= 0) paths_[arg].points.push_back(q);
    }
  }
}

std::vector<std::vector<Eigen::Vector3d>> FrontAnalyzer::isolines(double level) const {
  std::vector<std::vector<Eigen::Vector3d>> out;
  auto lerp = [&](int g0, int g1) {
    const double v0 = DK_[g0], v1 = DK_[g1];
    const double t = std::clamp((level - v0) / (v1 - v0), 0.0, 1.0);
    return coord_[g0] + t * (coord_[g1] - coord_[g0]);
  };
  // Half-open crossing rule so a level hitting a grid node exactly is
  // counted once.
  auto crosses = [&](int a, int b) { return (DK_[a] >= level) != (DK_[b] >= level); };
  if (nnj_ == 1) {
    for (int i = 0; i + 1 < nni_; ++i)
      if (crosses(i, i + 1)) out.push_back({lerp(i, i + 1)});
    return out;
  }
  // Marching squares, one segment per crossed cell edge pair.
  for (int j = 0; j + 1 < nnj_; ++j)
    for (int i = 0; i + 1 < nni_; ++i) {
      const int g[4] = {idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)};
      std::vector<Eigen::Vector3d> pts;
      for (int e = 0; e < 4; ++e) {
        const int a = g[e], b = g[(e + 1) % 4];
        if (crosses(a, b)) pts.push_back(lerp(a, b));
      }
      if (pts.size() >= 2) out.push_back({pts[0], pts[1]});
    }
  return out;
}

long FrontAnalyzer::fullyDamagedElements(const AnalysisState& state, double tol) const {
  const Mesh& m = sys_.mesh();
  const int nip = sys_.numPointsPerElement();
  long count = 0;
  for (int e = 0; e < static_cast<int>(m.cohesive.size()); ++e) {
    bool full = true;
    for (int ip = 0; ip < nip; ++ip)
      if (state.points[e * nip + ip].DK < 1.0 - tol) {
        full = false;
        break;
      }
    if (full) ++count;
  }
  return count;
}

}  // namespace delam
