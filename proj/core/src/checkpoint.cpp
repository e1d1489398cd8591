#include "delam/checkpoint.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace delam {

namespace {

constexpr uint32_t kMagic = 0x444c434bu;  // "DLCK"
constexpr uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open checkpoint for writing: " + path);
  }
  void u32(uint32_t v) { raw(&v, sizeof v); }
  void i64(int64_t v) { raw(&v, sizeof v); }
  void f64(double v) { raw(&v, sizeof v); }
  void str(const std::string& s) {
    i64(static_cast<int64_t>(s.size()));
    raw(s.data(), s.size());
  }
  void done() {
    out_.flush();
    if (!out_) throw std::runtime_error("checkpoint write failed");
  }

 private:
  void raw(const void* p, size_t n) { out_.write(static_cast<const char*>(p), n); }
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : in_(path, std::ios::binary) {
    if (!in_) throw std::runtime_error("cannot open checkpoint: " + path);
  }
  uint32_t u32() {
    uint32_t v;
    raw(&v, sizeof v);
    return v;
  }
  int64_t i64() {
    int64_t v;
    raw(&v, sizeof v);
    return v;
  }
  double f64() {
    double v;
    raw(&v, sizeof v);
    return v;
  }
  std::string str() {
    const int64_t n = i64();
    if (n < 0 || n > (1 << 20)) throw std::runtime_error("checkpoint: bad string length");
    std::string s(static_cast<size_t>(n), '\0');
    raw(s.data(), s.size());
    return s;
  }

 private:
  void raw(void* p, size_t n) {
    in_.read(static_cast<char*>(p), n);
    if (!in_) throw std::runtime_error("checkpoint: truncated file");
  }
  std::ifstream in_;
};

}  // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  Writer w(path);
  w.u32(kMagic);
  w.u32(kVersion);

  const BulkElastic& b = ck.material.bulk;
  for (double v : {b.E11, b.E22, b.E33, b.G12, b.G13, b.G23, b.nu12, b.nu13, b.nu23}) w.f64(v);
  const InterfaceStatic& i = ck.material.iface;
  for (double v : {i.G_Ic, i.G_sc, i.eta, i.tau_Io, i.tau_so, i.K}) w.f64(v);
  const FatigueProps& f = ck.material.fatigue;
  for (double v : {f.p_I, f.A_I, f.p_s, f.A_s, f.p_m, f.A_m, f.G_Ith, f.G_sth}) w.f64(v);
  w.u32(f.eta2.has_value() ? 1 : 0);
  w.f64(f.eta2.value_or(0.0));

  const ScenarioSpec& s = ck.scenario;
  w.str(s.specimen);
  for (double v : {s.length, s.width, s.arm_thickness, s.insert_length, s.le, s.le_w,
                   s.da_target, s.phi_target, s.support_margin, s.reinf_start,
                   s.reinf_thickness})
    w.f64(v);
  w.i64(s.thickness_elems);

  w.i64(ck.step_index);
  w.i64(ck.cycles_done);
  w.i64(ck.total_cycles);
  w.i64(ck.state.step);
  w.i64(ck.state.cycle);
  w.f64(ck.state.load_factor);

  w.i64(ck.state.u.size());
  for (Eigen::Index k = 0; k < ck.state.u.size(); ++k) w.f64(ck.state.u(k));
  w.i64(ck.state.multipliers.size());
  for (Eigen::Index k = 0; k < ck.state.multipliers.size(); ++k) w.f64(ck.state.multipliers(k));

  w.i64(static_cast<int64_t>(ck.state.points.size()));
  for (const CohesivePointState& p : ck.state.points) {
    for (double v : {p.DK, p.lambda_max, p.B_at_update, p.De, p.omega_d, p.omega_tot,
                     p.gdd_angle, p.dadN, p.J_I, p.J_II, p.J_III})
      w.f64(v);
    w.u32(p.static_growth ? 1 : 0);
  }
  w.done();
}

Checkpoint load_checkpoint(const std::string& path) {
  Reader r(path);
  if (r.u32() != kMagic) throw std::runtime_error("not a checkpoint file: " + path);
  if (r.u32() != kVersion) throw std::runtime_error("unsupported checkpoint version: " + path);

  Checkpoint ck;
  BulkElastic& b = ck.material.bulk;
  for (double* v : {&b.E11, &b.E22, &b.E33, &b.G12, &b.G13, &b.G23, &b.nu12, &b.nu13, &b.nu23})
    *v = r.f64();
  InterfaceStatic& i = ck.material.iface;
  for (double* v : {&i.G_Ic, &i.G_sc, &i.eta, &i.tau_Io, &i.tau_so, &i.K}) *v = r.f64();
  FatigueProps& f = ck.material.fatigue;
  for (double* v : {&f.p_I, &f.A_I, &f.p_s, &f.A_s, &f.p_m, &f.A_m, &f.G_Ith, &f.G_sth})
    *v = r.f64();
  const bool has_eta2 = r.u32() != 0;
  const double eta2 = r.f64();
  if (has_eta2) f.eta2 = eta2;

  ScenarioSpec& s = ck.scenario;
  s.specimen = r.str();
  for (double* v : {&s.length, &s.width, &s.arm_thickness, &s.insert_length, &s.le, &s.le_w,
                    &s.da_target, &s.phi_target, &s.support_margin, &s.reinf_start,
                    &s.reinf_thickness})
    *v = r.f64();
  s.thickness_elems = static_cast<int>(r.i64());

  ck.step_index = static_cast<int>(r.i64());
  ck.cycles_done = r.i64();
  ck.total_cycles = r.i64();
  ck.state.step = static_cast<int>(r.i64());
  ck.state.cycle = r.i64();
  ck.state.load_factor = r.f64();

  const int64_t nu = r.i64();
  if (nu < 0 || nu > (1ll << 32)) throw std::runtime_error("checkpoint: bad dof count");
  ck.state.u.resize(nu);
  for (int64_t k = 0; k < nu; ++k) ck.state.u(k) = r.f64();
  const int64_t nm = r.i64();
  if (nm < 0 || nm > (1 << 20)) throw std::runtime_error("checkpoint: bad multiplier count");
  ck.state.multipliers.resize(nm);
  for (int64_t k = 0; k < nm; ++k) ck.state.multipliers(k) = r.f64();

  const int64_t np = r.i64();
  if (np < 0 || np > (1ll << 32)) throw std::runtime_error("checkpoint: bad point count");
  ck.state.points.resize(static_cast<size_t>(np));
  for (CohesivePointState& p : ck.state.points) {
    for (double* v : {&p.DK, &p.lambda_max, &p.B_at_update, &p.De, &p.omega_d, &p.omega_tot,
                      &p.gdd_angle, &p.dadN, &p.J_I, &p.J_II, &p.J_III})
      *v = r.f64();
    p.static_growth = r.u32() != 0;
  }
  return ck;
}

}  // namespace delam
