#include "delam/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace delam {

FESystem::FESystem(Mesh mesh, MaterialSet mat, SolverSettings settings)
    : mesh_(std::move(mesh)), mat_(std::move(mat)), settings_(settings) {
  mesh_.validate();
  mat_.bulk.validate();
  mat_.iface.validate();
  buildBulkStiffness();
  is_prescribed_.assign(mesh_.numDofs(), 0);
  setDirichlet({});
}

void FESystem::setDirichlet(std::vector<Dirichlet> bcs) {
  dirichlet_ = std::move(bcs);
  is_prescribed_.assign(mesh_.numDofs(), 0);
  for (const auto& bc : dirichlet_) is_prescribed_[bc.dof] = 1;
  free_index_.assign(mesh_.numDofs(), -1);
  n_free_ = 0;
  for (int d = 0; d < mesh_.numDofs(); ++d)
    if (!is_prescribed_[d]) free_index_[d] = n_free_++;
  pattern_analyzed_ = false;
}

void FESystem::setConstraints(std::vector<LinearConstraint> cons) {
  constraints_ = std::move(cons);
  pattern_analyzed_ = false;
}

void FESystem::buildBulkStiffness() {
  std::vector<Eigen::Triplet<double>> trips;
  const int ndof = mesh_.numDofs();
  if (mesh_.dim == 2) {
    const Eigen::Matrix3d D = mat_.bulk.planeStrain13();
    for (const auto& conn : mesh_.bulk) {
      Eigen::Matrix<double, 4, 2> coords;
      for (int a = 0; a < 4; ++a)
        coords.row(a) = mesh_.nodes[conn[a]].head<2>().transpose();
      const auto Ke = quad4_stiffness(coords, D);
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < 2; ++i)
          for (int b = 0; b < 4; ++b)
            for (int j = 0; j < 2; ++j)
              trips.emplace_back(dof(conn[a], i), dof(conn[b], j),
                                 Ke(2 * a + i, 2 * b + j));
    }
  } else {
    const Eigen::Matrix<double, 6, 6> C = mat_.bulk.stiffness3d();
    for (const auto& conn : mesh_.bulk) {
      Eigen::Matrix<double, 8, 3> coords;
      for (int a = 0; a < 8; ++a) coords.row(a) = mesh_.nodes[conn[a]].transpose();
      const auto Ke = hex8_stiffness(coords, C);
      for (int a = 0; a < 8; ++a)
        for (int i = 0; i < 3; ++i)
          for (int b = 0; b < 8; ++b)
            for (int j = 0; j < 3; ++j)
              trips.emplace_back(dof(conn[a], i), dof(conn[b], j),
                                 Ke(3 * a + i, 3 * b + j));
    }
  }
  k_bulk_.resize(ndof, ndof);
  k_bulk_.setFromTriplets(trips.begin(), trips.end());
}

AnalysisState FESystem::initialState() const {
  AnalysisState s;
  s.u = Eigen::VectorXd::Zero(mesh_.numDofs());
  s.points.assign(numPoints(), CohesivePointState{});
  return s;
}

std::vector<TrialPoint> FESystem::trialPoints(
    const Eigen::VectorXd& u, const std::vector<CohesivePointState>& committed) const {
  const int nip = numPointsPerElement();
  std::vector<TrialPoint> out(numPoints());
  for (int e = 0; e < static_cast<int>(mesh_.cohesive.size()); ++e) {
    const auto kin = cohesive_kinematics(mesh_, e, u);
    for (int ip = 0; ip < nip; ++ip) {
      TrialPoint& tp = out[e * nip + ip];
      tp.dec = decompose_jump(kin.pt[ip].jump);
      const double mu_o = interp_strength(tp.dec.B, mat_.iface);
      const double G_c = interp_toughness(tp.dec.B, mat_.iface);
      tp.oc = onset_critical(mu_o, G_c, mat_.iface.K);
      const double env = static_damage_envelope(tp.dec.lambda, tp.oc.lambda_o, tp.oc.lambda_c);
      const double committed_DK = committed[e * nip + ip].DK;
      tp.growing = env > committed_DK;
      tp.DK = std::max(env, committed_DK);
    }
  }
  return out;
}

void FESystem::assembleCohesive(const Eigen::VectorXd& u,
                                const std::vector<CohesivePointState>& committed,
                                std::vector<Eigen::Triplet<double>>* trips,
                                Eigen::VectorXd* f) const {
  const int nf = mesh_.cohesiveNodesPerFace();
  const int dim = mesh_.dim;
  for (int e = 0; e < static_cast<int>(mesh_.cohesive.size()); ++e) {
    const auto kin = cohesive_kinematics(mesh_, e, u);
    const auto& conn = mesh_.cohesive[e];
    for (int ip = 0; ip < nf; ++ip) {
      const auto& p = kin.pt[ip];
      const double committed_DK = committed[e * nf + ip].DK;
      const auto dec = decompose_jump(p.jump);
      const double mu_o = interp_strength(dec.B, mat_.iface);
      const double G_c = interp_toughness(dec.B, mat_.iface);
      const auto oc = onset_critical(mu_o, G_c, mat_.iface.K);
      const double env = static_damage_envelope(dec.lambda, oc.lambda_o, oc.lambda_c);
      const double DK = std::max(env, committed_DK);
      const bool growing = env > committed_DK;

      const Eigen::Vector3d t_loc = traction(p.jump, DK, mat_.iface.K);
      const Eigen::Vector3d t_glob = p.R.transpose() * t_loc;
      const Eigen::Matrix3d T_loc =
          tangent_stiffness(p.jump, DK, mat_.iface.K, oc.lambda_o, oc.lambda_c,
                            growing && settings_.consistent_tangent);
      const Eigen::Matrix3d T_glob = p.R.transpose() * T_loc * p.R;

      // Newton-Cotes: only node pair `ip` carries this point.
      for (int a = 0; a < nf; ++a) {
        const double Na = kin.N[ip][a];
        if (Na == 0.0) continue;
        for (int face_a = 0; face_a < 2; ++face_a) {
          const double sa = face_a == 0 ? -1.0 : 1.0;
          const int na = conn[a + face_a * nf];
          if (f)
            for (int i = 0; i < dim; ++i)
              (*f)(dof(na, i)) += sa * p.weight * Na * t_glob(i);
          if (!trips) continue;
          for (int b = 0; b < nf; ++b) {
            const double Nb = kin.N[ip][b];
            if (Nb == 0.0) continue;
            for (int face_b = 0; face_b < 2; ++face_b) {
              const double sb = face_b == 0 ? -1.0 : 1.0;
              const int nb = conn[b + face_b * nf];
              for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                  trips->emplace_back(dof(na, i), dof(nb, j),
                                      sa * sb * p.weight * Na * Nb * T_glob(i, j));
            }
          }
        }
      }
    }
  }
}

Eigen::VectorXd FESystem::internalForce(
    const Eigen::VectorXd& u, const std::vector<CohesivePointState>& committed) const {
  Eigen::VectorXd f = k_bulk_ * u;
  assembleCohesive(u, committed, nullptr, &f);
  return f;
}

FESystem::SolveReport FESystem::solve(AnalysisState& state, double load_factor) {
  const int ndof = mesh_.numDofs();
  const int ncon = static_cast<int>(constraints_.size());
  const int nsys = n_free_ + ncon;

  Eigen::VectorXd u = state.u;
  for (const auto& bc : dirichlet_) u(bc.dof) = bc.scale * load_factor;
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(ncon);

  std::vector<CohesivePointState> ratchet;
  if (settings_.ratchet_trial) ratchet = state.points;

  SolveReport rep;
  for (int it = 0; it < settings_.max_iterations; ++it) {
    if (settings_.ratchet_trial) {
      const auto tr = trialPoints(u, state.points);
      for (size_t q = 0; q < ratchet.size(); ++q)
        ratchet[q].DK = std::max(ratchet[q].DK, tr[q].DK);
    }
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd f_int = k_bulk_ * u;
    assembleCohesive(u, settings_.ratchet_trial ? ratchet : state.points, &trips, &f_int);

    // Residual on free dofs plus constraint rows.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nsys);
    for (int d = 0; d < ndof; ++d)
      if (free_index_[d] >= 0) rhs(free_index_[d]) = -f_int(d);
    for (int c = 0; c < ncon; ++c) {
      double g = -constraints_[c].scale * load_factor;
      for (const auto& [d, w] : constraints_[c].terms) {
        g += w * u(d);
        if (free_index_[d] >= 0) rhs(free_index_[d]) -= w * lambda(c);
      }
      rhs(n_free_ + c) = -g;
    }

    // Reference force: reactions at prescribed dofs and constraint forces.
    double ref = 0.0;
    for (const auto& bc : dirichlet_)
      if (bc.scale != 0.0) ref += f_int(bc.dof) * f_int(bc.dof);
    for (int c = 0; c < ncon; ++c) ref += lambda(c) * lambda(c);
    ref = std::max(std::sqrt(ref), 1e-8);
    rep.residual = rhs.norm();
    rep.iterations = it;
    if (rep.residual <= settings_.tol_force * ref) {
      rep.converged = true;
      break;
    }

    // Reduced tangent system.
    std::vector<Eigen::Triplet<double>> red;
    red.reserve(trips.size() + k_bulk_.nonZeros() + 4 * ncon);
    for (int k = 0; k < k_bulk_.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator iter(k_bulk_, k); iter; ++iter) {
        const int ri = free_index_[iter.row()];
        const int ci = free_index_[iter.col()];
        if (ri >= 0 && ci >= 0) red.emplace_back(ri, ci, iter.value());
      }
    for (const auto& t : trips) {
      const int ri = free_index_[t.row()];
      const int ci = free_index_[t.col()];
      if (ri >= 0 && ci >= 0) red.emplace_back(ri, ci, t.value());
    }
    for (int c = 0; c < ncon; ++c)
      for (const auto& [d, w] : constraints_[c].terms) {
        const int ri = free_index_[d];
        if (ri >= 0) {
          red.emplace_back(ri, n_free_ + c, w);
          red.emplace_back(n_free_ + c, ri, w);
        }
      }

    Eigen::SparseMatrix<double> A(nsys, nsys);
    A.setFromTriplets(red.begin(), red.end());
    if (!pattern_analyzed_) {
      lu_.analyzePattern(A);
      pattern_analyzed_ = true;
    }
    lu_.factorize(A);
    if (lu_.info() != Eigen::Success) {
      lu_.compute(A);  // pattern changed numerically; full recompute
      if (lu_.info() != Eigen::Success) break;
    }
    const Eigen::VectorXd du = lu_.solve(rhs);

    const double w = settings_.relaxation;
    for (int d = 0; d < ndof; ++d)
      if (free_index_[d] >= 0) u(d) += w * du(free_index_[d]);
    for (int c = 0; c < ncon; ++c) lambda(c) += w * du(n_free_ + c);

    // Secondary acceptance: stagnated displacement correction with a
    // residual already close to the force tolerance.
    if (du.head(n_free_).norm() <= settings_.tol_disp * std::max(u.norm(), 1e-12) &&
        rep.residual <= 10.0 * settings_.tol_force * ref) {
      rep.converged = true;
      rep.iterations = it + 1;
      break;
    }
  }

  if (rep.converged) {
    state.u = u;
    state.multipliers = lambda;
    state.load_factor = load_factor;
  }
  return rep;
}

void FESystem::commit(AnalysisState& state) const {
  const auto trials = trialPoints(state.u, state.points);
  for (int q = 0; q < numPoints(); ++q) {
    auto& s = state.points[q];
    const auto& tp = trials[q];
    s.lambda_max = std::max(s.lambda_max, tp.dec.lambda);
    if (tp.DK > s.DK) {
      s.DK = tp.DK;
      s.B_at_update = tp.dec.B;
    }
    const auto es = energy_state(s.DK, s.B_at_update, mat_.iface);
    s.De = std::max(s.De, es.De);
    s.omega_d = es.omega_d;
    s.omega_tot = es.omega_tot;
  }
}

double FESystem::reactionSum(const AnalysisState& state, const std::vector<int>& dofs) const {
  const Eigen::VectorXd f = internalForce(state.u, state.points);
  double sum = 0.0;
  for (int d : dofs) sum += f(d);
  return sum;
}

double FESystem::bulkStrainEnergy(const Eigen::VectorXd& u) const {
  return 0.5 * u.dot(k_bulk_ * u);
}

double FESystem::dissipatedEnergy(const AnalysisState& state) const {
  const int nf = mesh_.cohesiveNodesPerFace();
  double total = 0.0;
  for (int e = 0; e < static_cast<int>(mesh_.cohesive.size()); ++e) {
    const auto kin = cohesive_kinematics(mesh_, e, state.u);
    for (int ip = 0; ip < nf; ++ip)
      total += kin.pt[ip].weight * state.points[e * nf + ip].omega_d;
  }
  return total;
}

}  // namespace delam
