#include "delam/export.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "delam/elements.hpp"

namespace delam {

namespace {

void checkStream(const std::ofstream& out, const std::string& what) {
  if (!out) throw std::runtime_error("cannot write output file: " + what);
}

std::ofstream openCsv(const std::string& path, bool resume, const char* header) {
  const bool append = resume && std::filesystem::exists(path);
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  checkStream(out, path);
  if (!append) out << header << "\n";
  return out;
}

}  // namespace

std::string fmt_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

RunOutputs::RunOutputs(const std::string& dir, bool resume) {
  std::filesystem::create_directories(dir);
  static_csv_ = openCsv(dir + "/force_displacement.csv", resume,
                        "step,increment,displacement,force");
  fatigue_csv_ = openCsv(dir + "/fatigue_history.csv", resume,
                         "step,increment,cycle,dN,damaged_elements,dadN_measured,"
                         "dadN_model,G_max,Phi,G_th,p,A,J_I,J_II,J_III,force,paths,"
                         "static_growth");
}

void RunOutputs::write(const StaticRecord& r) {
  static_csv_ << r.step << ',' << r.increment << ',' << fmt_num(r.load_factor) << ','
              << fmt_num(r.force) << "\n";
  static_csv_.flush();
  checkStream(static_csv_, "force_displacement.csv");
}

void RunOutputs::write(const FatigueRecord& r) {
  fatigue_csv_ << r.step << ',' << r.increment << ',' << r.cycle << ',' << r.dN << ','
               << r.damaged_elements << ',' << fmt_num(r.dadN_measured) << ','
               << fmt_num(r.dadN_model) << ',' << fmt_num(r.G_max) << ',' << fmt_num(r.Phi)
               << ',' << fmt_num(r.G_th) << ',' << fmt_num(r.p) << ',' << fmt_num(r.A) << ','
               << fmt_num(r.J_I) << ',' << fmt_num(r.J_II) << ',' << fmt_num(r.J_III) << ','
               << fmt_num(r.force) << ',' << r.paths << ',' << r.static_growth << "\n";
  fatigue_csv_.flush();
  checkStream(fatigue_csv_, "fatigue_history.csv");
}

void export_point_csv(const std::string& path, const FESystem& sys,
                      const AnalysisState& state) {
  std::ofstream out(path, std::ios::trunc);
  checkStream(out, path);
  out << "element,point,x,y,z,d1,d2,d3,lambda,B,DK,De,omega_d,omega_tot,"
         "gdd_angle,dadN,J_I,J_II,J_III,static_growth\n";
  const Mesh& m = sys.mesh();
  const int nip = sys.numPointsPerElement();
  for (size_t e = 0; e < m.cohesive.size(); ++e) {
    const CohesiveKinematics kin = cohesive_kinematics(m, static_cast<int>(e), state.u);
    for (int ip = 0; ip < nip; ++ip) {
      const auto& p = kin.pt[ip];
      const CohesivePointState& ps = state.points[e * nip + ip];
      const JumpDecomposition dec = decompose_jump(p.jump);
      out << e << ',' << ip << ',' << fmt_num(p.coord(0)) << ',' << fmt_num(p.coord(1)) << ','
          << fmt_num(p.coord(2)) << ',' << fmt_num(p.jump.d1) << ',' << fmt_num(p.jump.d2)
          << ',' << fmt_num(p.jump.d3) << ',' << fmt_num(dec.lambda) << ',' << fmt_num(dec.B)
          << ',' << fmt_num(ps.DK) << ',' << fmt_num(ps.De) << ',' << fmt_num(ps.omega_d)
          << ',' << fmt_num(ps.omega_tot) << ',' << fmt_num(ps.gdd_angle) << ','
          << fmt_num(ps.dadN) << ',' << fmt_num(ps.J_I) << ',' << fmt_num(ps.J_II) << ','
          << fmt_num(ps.J_III) << ',' << (ps.static_growth ? 1 : 0) << "\n";
    }
  }
  checkStream(out, path);
}

void export_isolines_csv(const std::string& path, const FrontAnalyzer& fa,
                         const std::vector<double>& levels) {
  std::ofstream out(path, std::ios::trunc);
  checkStream(out, path);
  out << "level,polyline,x,y,z\n";
  for (double level : levels) {
    const auto lines = fa.isolines(level);
    for (size_t li = 0; li < lines.size(); ++li)
      for (const Eigen::Vector3d& p : lines[li])
        out << fmt_num(level) << ',' << li << ',' << fmt_num(p(0)) << ',' << fmt_num(p(1))
            << ',' << fmt_num(p(2)) << "\n";
  }
  checkStream(out, path);
}

void export_vtk(const std::string& path, const FESystem& sys, const AnalysisState& state) {
  const Mesh& m = sys.mesh();
  const int nip = sys.numPointsPerElement();
  const int nf = m.cohesiveNodesPerFace();
  std::ofstream out(path, std::ios::trunc);
  checkStream(out, path);

  out << "# vtk DataFile Version 3.0\ninterface damage snapshot\nASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << m.nodes.size() << " double\n";
  for (const auto& n : m.nodes)
    out << fmt_num(n(0)) << ' ' << fmt_num(n(1)) << ' ' << fmt_num(n(2)) << "\n";

  const size_t ncell = m.bulk.size() + m.cohesive.size();
  const int bn = m.bulkNodes();
  const int cn = 2 * nf;
  size_t list_len = m.bulk.size() * (bn + 1) + m.cohesive.size() * (cn + 1);
  out << "CELLS " << ncell << ' ' << list_len << "\n";
  for (const auto& e : m.bulk) {
    out << bn;
    for (int a = 0; a < bn; ++a) out << ' ' << e[a];
    out << "\n";
  }
  for (const auto& e : m.cohesive) {
    out << cn;
    if (m.dim == 2)  // quad: lower edge then upper edge reversed
      out << ' ' << e[0] << ' ' << e[1] << ' ' << e[3] << ' ' << e[2];
    else
      for (int a = 0; a < cn; ++a) out << ' ' << e[a];
    out << "\n";
  }
  out << "CELL_TYPES " << ncell << "\n";
  const int bulk_type = m.dim == 2 ? 9 : 12;   // quad / hexahedron
  const int coh_type = m.dim == 2 ? 9 : 12;
  for (size_t e = 0; e < m.bulk.size(); ++e) out << bulk_type << "\n";
  for (size_t e = 0; e < m.cohesive.size(); ++e) out << coh_type << "\n";

  out << "POINT_DATA " << m.nodes.size() << "\nVECTORS displacement double\n";
  for (size_t n = 0; n < m.nodes.size(); ++n) {
    double d[3] = {0, 0, 0};
    for (int c = 0; c < m.dim; ++c) d[c] = state.u(n * m.dim + c);
    out << fmt_num(d[0]) << ' ' << fmt_num(d[1]) << ' ' << fmt_num(d[2]) << "\n";
  }

  // Cell fields: zero on bulk cells, point-averaged on cohesive cells.
  const auto writeCellField = [&](const char* name, auto&& value) {
    out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
    for (size_t e = 0; e < m.bulk.size(); ++e) out << "0\n";
    for (size_t e = 0; e < m.cohesive.size(); ++e) {
      double acc = 0;
      for (int ip = 0; ip < nip; ++ip) acc += value(state.points[e * nip + ip]);
      out << fmt_num(acc / nip) << "\n";
    }
  };
  out << "CELL_DATA " << ncell << "\n";
  writeCellField("DK", [](const CohesivePointState& p) { return p.DK; });
  writeCellField("De", [](const CohesivePointState& p) { return p.De; });
  writeCellField("specific_work_ratio", [&](const CohesivePointState& p) {
    const double gc = interp_toughness(p.B_at_update, sys.material().iface);
    return gc > 0 ? p.omega_tot / gc : 0.0;
  });
  writeCellField("gdd_angle", [](const CohesivePointState& p) { return p.gdd_angle; });
  writeCellField("dadN", [](const CohesivePointState& p) { return p.dadN; });
  writeCellField("J_I", [](const CohesivePointState& p) { return p.J_I; });
  writeCellField("J_II", [](const CohesivePointState& p) { return p.J_II; });
  writeCellField("J_III", [](const CohesivePointState& p) { return p.J_III; });
  checkStream(out, path);
}

}  // namespace delam
