#include "delam/driver.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <unordered_map>

#include "delam/checkpoint.hpp"
#include "delam/elements.hpp"
#include "delam/export.hpp"
#include "delam/fatigue.hpp"

namespace delam {

namespace {

constexpr double kEnvelopeSettleTol = 1e-10;
constexpr int kEnvelopeSettleMax = 200;

std::string latestCheckpointPath(const std::string& dir) {
  return dir + "/checkpoint_latest.ckpt";
}

}  // namespace

Driver::Driver(RunConfig cfg, DriverOptions opt)
    : cfg_(std::move(cfg)), opt_(std::move(opt)) {
  scenario_ = build_scenario(cfg_.scenario);
  sys_ = std::make_unique<FESystem>(scenario_.mesh, cfg_.material, cfg_.solver);
  sys_->setDirichlet(scenario_.dirichlet);
  sys_->setConstraints(scenario_.constraints);
  front_ = std::make_unique<FrontAnalyzer>(*sys_);

  state_ = sys_->initialState();
  const int nip = sys_->numPointsPerElement();
  for (int e : scenario_.initially_damaged)
    for (int ip = 0; ip < nip; ++ip) {
      CohesivePointState& p = state_.points[static_cast<size_t>(e) * nip + ip];
      p.DK = 1.0;
      p.De = 1.0;
      // Unbonded from the start: carries no dissipated energy, but for the
      // growth-direction potential it is a fully decohered state; a zero
      // total work would flip the work gradient at the insert edge.
      p.omega_d = 0.0;
      p.omega_tot = interp_toughness(p.B_at_update, cfg_.material.iface);
    }
}

Driver::~Driver() = default;

void Driver::log(int level, const std::string& msg) const {
  if (opt_.verbosity >= level) std::cout << msg << "\n";
}

double Driver::specimenForce() const {
  if (!scenario_.constraints.empty() && state_.multipliers.size() > 0)
    return state_.multipliers(0) * scenario_.force_scale;
  return sys_->reactionSum(state_, scenario_.reaction_dofs) * scenario_.force_scale;
}

void Driver::equilibrate(double load_factor, const char* context) {
  auto rep = sys_->solve(state_, load_factor);
  if (rep.converged) return;
  // A large damage jolt at constant load can limit-cycle the plain
  // damage/displacement alternation. Fall back to ratcheted-trial rounds:
  // each converges monotonically, its commit locks in the quasi-static
  // cascade, and a plain solve verifies the settled configuration.
  SolverSettings& ss = sys_->settings();
  const SolverSettings saved = ss;
  for (int round = 0; round < 8; ++round) {
    ss.ratchet_trial = true;
    ss.max_iterations = 5 * saved.max_iterations;
    rep = sys_->solve(state_, load_factor);
    ss = saved;
    if (!rep.converged) break;
    sys_->commit(state_);
    rep = sys_->solve(state_, load_factor);
    if (rep.converged) return;
  }
  // Retry through an intermediate load level.
  const double mid = 0.5 * (state_.load_factor + load_factor);
  auto rep1 = sys_->solve(state_, mid);
  if (rep1.converged) {
    sys_->commit(state_);
    rep = sys_->solve(state_, load_factor);
    if (rep.converged) return;
  }
  throw SolverError(std::string(context) + ": no equilibrium at load factor " +
                    fmt_num(load_factor) + " (residual " + fmt_num(rep.residual) + ")");
}

void Driver::settleEnvelope(double load_factor, const char* context) {
  for (int pass = 0; pass < kEnvelopeSettleMax; ++pass) {
    equilibrate(load_factor, context);
    const auto trials = sys_->trialPoints(state_.u, state_.points);
    double growth = 0.0;
    for (size_t q = 0; q < trials.size(); ++q)
      growth = std::max(growth, trials[q].DK - state_.points[q].DK);
    sys_->commit(state_);
    if (growth < kEnvelopeSettleTol) return;
  }
  throw SolverError(std::string(context) + ": quasi-static damage growth did not settle");
}

void Driver::writeCheckpoint(int step_index, long cycles_done,
                             const std::string& suffix) const {
  Checkpoint ck;
  ck.material = cfg_.material;
  ck.scenario = cfg_.scenario;
  ck.state = state_;
  ck.step_index = step_index;
  ck.cycles_done = cycles_done;
  ck.total_cycles = total_cycles_;
  save_checkpoint(opt_.out_dir + "/checkpoint_" + suffix + ".ckpt", ck);
}

void Driver::writeSnapshot(const std::string& tag) const {
  export_point_csv(opt_.out_dir + "/points_" + tag + ".csv", *sys_, state_);
  export_vtk(opt_.out_dir + "/field_" + tag + ".vtk", *sys_, state_);
  export_isolines_csv(opt_.out_dir + "/front_" + tag + ".csv", *front_,
                      {0.01, 0.5, 0.99});
}

void Driver::runStatic(int step_index, const LoadStep& step) {
  const double from = state_.load_factor;
  const double span = step.target - from;
  log(1, "step " + std::to_string(step_index) + ": static ramp " + fmt_num(from) + " -> " +
             fmt_num(step.target));
  if (std::abs(span) < 1e-14) {
    settleEnvelope(step.target, "static step");
    return;
  }

  double dinc = step.initial_increment > 0 ? step.initial_increment : std::abs(span) / 20.0;
  const double dmax = std::abs(span) / 10.0;
  dinc = std::min(dinc, std::abs(span));
  const double sgn = span > 0 ? 1.0 : -1.0;
  double lf = from;
  int inc = 0;
  int cutbacks = 0;

  while (sgn * (step.target - lf) > 1e-12 * std::abs(span)) {
    double trial = lf + sgn * dinc;
    if (sgn * (step.target - trial) < 0) trial = step.target;
    const auto rep = sys_->solve(state_, trial);
    if (!rep.converged) {
      if (++cutbacks > cfg_.solver.max_cutbacks)
        throw SolverError("static step " + std::to_string(step_index) +
                          ": cutback limit reached at load factor " + fmt_num(trial));
      dinc *= cfg_.solver.cutback_factor;
      continue;
    }
    sys_->commit(state_);
    lf = trial;
    ++inc;
    out_->write(StaticRecord{step_index, inc, lf, specimenForce()});
    log(2, "  inc " + std::to_string(inc) + ": u=" + fmt_num(lf) + " F=" +
               fmt_num(specimenForce()) + " it=" + std::to_string(rep.iterations));
    if (rep.iterations <= 4 && cutbacks == 0) dinc = std::min(dinc * 1.4, dmax);
    if (cutbacks > 0) --cutbacks;
  }
  // Let any residual envelope growth at the final level settle.
  settleEnvelope(step.target, "static step");
}

void Driver::runFatigue(int step_index, const LoadStep& step, long start_cycles) {
  log(1, "step " + std::to_string(step_index) + ": fatigue, envelope " + fmt_num(step.target) +
             ", R=" + fmt_num(step.R) + ", budget " + std::to_string(step.cycles) +
             " cycles (starting at " + std::to_string(start_cycles) + ")");
  settleEnvelope(step.target, "fatigue envelope");
  front_->update(state_);
  long damaged_prev = front_->fullyDamagedElements(state_);
  // Measured crack position: mean coordinate of the DK = 0.99 isoline
  // along the interface axis. Interpolated on the grid, it resolves
  // advances below one element length, which plain element counting
  // quantizes away.
  auto front_position = [this]() {
    double s = 0.0;
    long n = 0;
    for (const auto& poly : front_->isolines(0.99))
      for (const auto& pnt : poly) {
        s += pnt.dot(front_->axis1());
        ++n;
      }
    return n > 0 ? s / static_cast<double>(n)
                 : static_cast<double>(front_->fullyDamagedElements(state_)) *
                       scenario_.element_length;
  };
  double front_prev = front_position();
  long N = start_cycles;
  const int nip = sys_->numPointsPerElement();
  const InterfaceStatic& iface = cfg_.material.iface;

  while (N < step.cycles) {
    if (opt_.max_cycles >= 0 && cycles_budget_used_ >= opt_.max_cycles) {
      log(1, "  cycle cap reached; checkpointing and stopping");
      writeCheckpoint(step_index, N, "latest");
      return;
    }

    // Growth rate of every active path at the current equilibrium.
    struct PathLaw {
      double G_th = 0, p = 0, A = 0;
    };
    auto ratePaths = [&](std::vector<JPath>& pth, std::vector<PathLaw>* lws,
                         double* dmax, int* fst, int* nstat) {
      for (size_t pi = 0; pi < pth.size(); ++pi) {
        JPath& path = pth[pi];
        const ParisParams pp = interp_paris(path.Phi, cfg_.material.fatigue);
        const double G_th = interp_threshold(path.Phi, cfg_.material.fatigue);
        const double G_c = interp_toughness(path.Phi, iface);
        const ParisRate rate = paris_rate(path.G_max, G_c, G_th, pp.p, pp.A, step.R);
        path.dadN = rate.dadN;
        path.static_growth = rate.static_growth;
        if (lws) (*lws)[pi] = {G_th, pp.p, pp.A};
        if (nstat && rate.static_growth) ++*nstat;
        if (dmax && rate.dadN > *dmax) {
          *dmax = rate.dadN;
          if (fst) *fst = static_cast<int>(pi);
        }
        if (fst && *fst < 0) *fst = 0;
      }
    };

    auto paths = front_->paths();
    double dadN_max = 0.0;
    int fastest = -1;
    int n_static = 0;
    std::vector<PathLaw> laws(paths.size());
    ratePaths(paths, &laws, &dadN_max, &fastest, &n_static);

    long dN = cycle_jump(dadN_max, cfg_.scenario.da_target, step.cycles - N);
    for (long c : step.checkpoints)
      if (c > N) {
        dN = std::min(dN, c - N);
        break;
      }
    if (opt_.max_cycles >= 0) dN = std::min(dN, opt_.max_cycles - cycles_budget_used_);
    if (dN < 1) dN = 1;

    // Per-point damage accumulation along the growth-driving direction.
    // The rate of every point is frozen at the start of the jump (points
    // entering the zone mid-jump pick up the rate of their path when they
    // first appear). The jump is applied in sub-steps with a quasi-static
    // settle in between: at low energy release rates the cohesive zone is
    // shorter than the jump advance, and a single application would lose
    // the surplus damage to the De <= 1 clamp instead of extending the
    // zone forward.
    std::vector<double> frozen(state_.points.size(), -1.0);

    // Interface node -> cohesive elements sharing it, for upwind slope
    // selection below.
    std::unordered_map<int, std::vector<int>> node_elems;
    {
      const int nf = scenario_.mesh.cohesiveNodesPerFace();
      for (size_t e = 0; e < scenario_.mesh.cohesive.size(); ++e)
        for (int a = 0; a < nf; ++a)
          node_elems[scenario_.mesh.cohesive[e][a]].push_back(static_cast<int>(e));
    }

    auto applyDamage = [&](const std::vector<JPath>& pth, long sub_dN) {
      const auto& point_gdd = front_->pointGdd();
      const auto& has_gdd = front_->pointHasGdd();
      // Snapshot of the committed energy damage: the lambda slope is taken
      // from the damage profile itself, which stays well defined when the
      // settled jumps sit below the softening envelope.
      std::vector<double> De0(state_.points.size());
      for (size_t q = 0; q < state_.points.size(); ++q) De0[q] = state_.points[q].De;
      const int nf = scenario_.mesh.cohesiveNodesPerFace();
      int last_elem = -1;
      CohesiveKinematics kin;
      for (const JPath& path : pth) {
        for (int q : path.points) {
          CohesivePointState& ps = state_.points[q];
          ps.J_I = path.J_I;
          ps.J_II = path.J_II;
          ps.J_III = path.J_III;
          ps.static_growth = path.static_growth;
          if (frozen[q] < 0.0) frozen[q] = path.dadN;
          const double dadN_pt = frozen[q];
          ps.dadN = dadN_pt;
          if (!has_gdd[q] || dadN_pt <= 0.0) continue;
          const int elem = q / nip;
          const int ip = q % nip;
          if (elem != last_elem) {
            kin = cohesive_kinematics(scenario_.mesh, elem, state_.u);
            last_elem = elem;
          }
          const auto& pt = kin.pt[ip];
          const Eigen::Vector3d e3 = pt.R.row(2);
          Eigen::Vector3d e1 = point_gdd[q] - point_gdd[q].dot(e3) * e3;
          if (e1.norm() < 1e-12) continue;
          e1.normalize();
          const Eigen::Vector3d e2 = e3.cross(e1);
          ps.gdd_angle = std::atan2(point_gdd[q].dot(front_->axis2()),
                                    point_gdd[q].dot(front_->axis1()));

          Eigen::Matrix3d Rc;
          Rc.row(0) = e1;
          Rc.row(1) = e2;
          Rc.row(2) = e3;
          const Eigen::Vector3d jglob =
              pt.R.transpose() * Eigen::Vector3d(pt.jump.d1, pt.jump.d2, pt.jump.d3);
          const Eigen::Vector3d jl = Rc * jglob;
          const DisplacementJump jloc{jl(0), jl(1), jl(2)};
          const JumpDecomposition dec = decompose_jump(jloc);
          if (dec.lambda <= 0.0) continue;
          const Eigen::Vector3d dj_glob =
              cohesive_jump_gradient(scenario_.mesh, elem, ip, state_.u, e1);
          const SpatialSlopes sl = spatial_slopes(jump_mixity_partials(jloc), Rc * dj_glob);
          // The mode mixity is scale-invariant in the jump, so its slope
          // is taken from the displacement field. The lambda slope is
          // rebuilt from the damage profile: a settled fatigue zone sits
          // below the softening envelope and the raw jump slope
          // under-represents the advance of the damage front. The slope is
          // a per-point upwind difference against the neighbouring point on
          // the open side, where the transported damage comes from; the
          // one-sided stencil keeps trailing points advancing once their
          // own element has saturated, and a lagging point of a coincident
          // pair sees a steeper slope and re-synchronises with its twin.
          const int node = scenario_.mesh.cohesive[elem][ip];
          int up_elem = elem;
          double up_score = 0.0;
          for (int cand : node_elems.at(node)) {
            Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
            for (int a = 0; a < nf; ++a)
              centroid += scenario_.mesh.nodes[scenario_.mesh.cohesive[cand][a]];
            centroid /= static_cast<double>(nf);
            const double score = (centroid - pt.coord).dot(e1);
            if (score > up_score) {
              up_score = score;
              up_elem = cand;
            }
          }
          int up_a = -1;
          double up_dist = 0.0;
          for (int a = 0; a < nf; ++a) {
            const int na = scenario_.mesh.cohesive[up_elem][a];
            if (na == node) continue;
            const double d = (scenario_.mesh.nodes[na] - pt.coord).dot(e1);
            if (d > up_dist) {
              up_dist = d;
              up_a = a;
            }
          }
          if (up_a < 0) continue;
          const double dDe_dx1 = (De0[up_elem * nf + up_a] - De0[q]) / up_dist;
          const double dlam_dx1 = dDe_dx1 / dDe_dlambda(dec.B, iface);
          damage_increment(ps, {dec.lambda, dec.B, sl.dB_dx1, dlam_dx1}, iface,
                           dadN_pt, static_cast<double>(sub_dN));
        }
      }
    };

    auto zoneCappedAdvance = [&](const std::vector<JPath>& pth) {
      double da = cfg_.scenario.da_target;
      for (const auto& path : pth) {
        if (path.dadN <= 0.0 || path.static_growth) continue;
        double lo = 0.0, hi = 0.0;
        bool any = false;
        for (const auto& st : path.stations)
          if (st.DK > 1e-3 && st.DK < 1.0 - 1e-3) {
            if (!any) {
              lo = hi = st.x1;
              any = true;
            } else {
              lo = std::min(lo, st.x1);
              hi = std::max(hi, st.x1);
            }
          }
        if (any)
          da = std::min(da,
                        std::max(0.5 * scenario_.element_length, 0.25 * (hi - lo)));
      }
      return da;
    };

    long remaining = dN;
    bool first = true;
    while (remaining > 0) {
      std::vector<JPath> sub_paths;
      const std::vector<JPath>* cur = &paths;
      if (!first) {
        sub_paths = front_->paths();
        ratePaths(sub_paths, nullptr, nullptr, nullptr, nullptr);
        cur = &sub_paths;
      }
      long sub = remaining;
      if (dadN_max > 0.0) {
        const double da_eff = zoneCappedAdvance(*cur);
        sub = std::clamp(static_cast<long>(std::floor(da_eff / dadN_max)), 1L, remaining);
      }
      applyDamage(*cur, sub);
      remaining -= sub;
      first = false;
      if (remaining > 0) {
        settleEnvelope(step.target, "fatigue envelope");
        front_->update(state_);
      }
    }

    N += dN;
    total_cycles_ += dN;
    cycles_budget_used_ += dN;
    state_.cycle = total_cycles_;
    ++fatigue_increment_;

    settleEnvelope(step.target, "fatigue envelope");
    front_->update(state_);
    const long damaged_now = front_->fullyDamagedElements(state_);

    FatigueRecord rec;
    rec.step = step_index;
    rec.increment = fatigue_increment_;
    rec.cycle = total_cycles_;
    rec.dN = dN;
    rec.damaged_elements = damaged_now;
    const double front_now = front_position();
    rec.dadN_measured = std::max(0.0, front_now - front_prev) / static_cast<double>(dN);
    rec.dadN_model = dadN_max;
    if (fastest >= 0 && fastest < static_cast<int>(paths.size())) {
      rec.G_max = paths[fastest].G_max;
      rec.Phi = paths[fastest].Phi;
      rec.G_th = laws[fastest].G_th;
      rec.p = laws[fastest].p;
      rec.A = laws[fastest].A;
      rec.J_I = paths[fastest].J_I;
      rec.J_II = paths[fastest].J_II;
      rec.J_III = paths[fastest].J_III;
    }
    rec.force = specimenForce();
    rec.paths = static_cast<int>(paths.size());
    rec.static_growth = n_static;
    out_->write(rec);
    damaged_prev = damaged_now;
    front_prev = front_now;

    log(2, "  N=" + std::to_string(total_cycles_) + " dN=" + std::to_string(dN) +
               " da/dN=" + fmt_num(dadN_max) + " G_max=" + fmt_num(rec.G_max) +
               " damaged=" + std::to_string(damaged_now));

    const bool at_stop =
        std::find(step.checkpoints.begin(), step.checkpoints.end(), N) !=
        step.checkpoints.end();
    if (at_stop) {
      const std::string tag = "cycle_" + std::to_string(total_cycles_);
      writeSnapshot(tag);
      writeCheckpoint(step_index, N, tag);
      log(1, "  programmed stop at " + std::to_string(N) + " cycles (total " +
                 std::to_string(total_cycles_) + ")");
    }
    writeCheckpoint(step_index, N, "latest");

    if (dadN_max <= 0.0 && n_static == 0 && N >= step.cycles) break;
  }
}

void Driver::run() {
  std::filesystem::create_directories(opt_.out_dir);
  int start_step = 0;
  long start_cycles = 0;
  bool resumed = false;
  if (opt_.resume) {
    const std::string path = latestCheckpointPath(opt_.out_dir);
    if (std::filesystem::exists(path)) {
      const Checkpoint ck = load_checkpoint(path);
      if (ck.state.u.size() != state_.u.size() ||
          ck.state.points.size() != state_.points.size())
        throw std::runtime_error("checkpoint incompatible with this configuration");
      state_ = ck.state;
      start_step = ck.step_index;
      start_cycles = ck.cycles_done;
      total_cycles_ = ck.total_cycles;
      resumed = true;
      log(1, "resuming at step " + std::to_string(start_step) + ", " +
                 std::to_string(start_cycles) + " cycles into the step");
    } else {
      log(1, "no checkpoint found; starting from scratch");
    }
  }

  out_ = std::make_unique<RunOutputs>(opt_.out_dir, resumed);
  for (int s = start_step; s < static_cast<int>(cfg_.steps.size()); ++s) {
    state_.step = s;
    const LoadStep& step = cfg_.steps[s];
    if (step.kind == LoadStep::Kind::Static) {
      runStatic(s, step);
    } else {
      runFatigue(s, step, s == start_step ? start_cycles : 0);
      if (opt_.max_cycles >= 0 && cycles_budget_used_ >= opt_.max_cycles) {
        log(1, "stopping: cycle cap reached");
        return;
      }
    }
    writeCheckpoint(s + 1, 0, "latest");
  }
  front_->update(state_);
  writeSnapshot("final");
  writeCheckpoint(static_cast<int>(cfg_.steps.size()), 0, "final");
  log(1, "run complete: " + std::to_string(total_cycles_) + " cycles simulated");
}

}  // namespace delam
