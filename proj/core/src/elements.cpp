#include "delam/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace delam {

namespace {

const double kGauss = 1.0 / std::sqrt(3.0);

struct SurfacePoint {
  // Unnormalized tangent vectors of the mid-surface map and the shape
  // function derivatives at an integration point.
  Eigen::Vector3d t[2];
  int ntan = 1;
  double dN[2][4];  // dN[alpha][node]
};

Eigen::Vector3d nodeDisp(const Eigen::VectorXd& u, int dim, int n) {
  Eigen::Vector3d d = Eigen::Vector3d::Zero();
  for (int c = 0; c < dim; ++c) d(c) = u(n * dim + c);
  return d;
}

/// Reference mid-surface nodal positions and jump vectors of a cohesive
/// element. The local frame follows the undeformed mid-surface, consistent
/// with the small-displacement bulk model.
void gatherCohesive(const Mesh& mesh, int elem, const Eigen::VectorXd& u,
                    Eigen::Vector3d mid[4], Eigen::Vector3d jump[4]) {
  const int nf = mesh.cohesiveNodesPerFace();
  const auto& conn = mesh.cohesive[elem];
  for (int a = 0; a < nf; ++a) {
    const int lo = conn[a];
    const int up = conn[a + nf];
    mid[a] = 0.5 * (mesh.nodes[lo] + mesh.nodes[up]);
    jump[a] = nodeDisp(u, mesh.dim, up) - nodeDisp(u, mesh.dim, lo);
  }
}

SurfacePoint surfacePoint(const Mesh& mesh, const Eigen::Vector3d mid[4], int ip) {
  SurfacePoint sp;
  if (mesh.dim == 2) {
    sp.ntan = 1;
    sp.dN[0][0] = -0.5;
    sp.dN[0][1] = 0.5;
    sp.t[0] = sp.dN[0][0] * mid[0] + sp.dN[0][1] * mid[1];
  } else {
    sp.ntan = 2;
    static const double xi[4] = {-1, 1, 1, -1};
    static const double et[4] = {-1, -1, 1, 1};
    for (int a = 0; a < 4; ++a) {
      sp.dN[0][a] = 0.25 * xi[a] * (1.0 + et[ip] * et[a]);
      sp.dN[1][a] = 0.25 * et[a] * (1.0 + xi[ip] * xi[a]);
    }
    sp.t[0].setZero();
    sp.t[1].setZero();
    for (int a = 0; a < 4; ++a) {
      sp.t[0] += sp.dN[0][a] * mid[a];
      sp.t[1] += sp.dN[1][a] * mid[a];
    }
  }
  return sp;
}

/// In-plane gradient of a scalar with nodal values v via the first
/// fundamental form of the mid-surface map.
Eigen::Vector3d surfaceGradient(const SurfacePoint& sp, int nf, const double* v) {
  if (sp.ntan == 1) {
    double dphi = 0.0;
    for (int a = 0; a < nf; ++a) dphi += sp.dN[0][a] * v[a];
    const double g11 = sp.t[0].squaredNorm();
    if (g11 <= 0.0) throw std::runtime_error("cohesive element: singular mid-line Jacobian");
    return (dphi / g11) * sp.t[0];
  }
  Eigen::Vector2d dphi = Eigen::Vector2d::Zero();
  for (int a = 0; a < nf; ++a) {
    dphi(0) += sp.dN[0][a] * v[a];
    dphi(1) += sp.dN[1][a] * v[a];
  }
  Eigen::Matrix2d G;
  G(0, 0) = sp.t[0].dot(sp.t[0]);
  G(0, 1) = G(1, 0) = sp.t[0].dot(sp.t[1]);
  G(1, 1) = sp.t[1].dot(sp.t[1]);
  if (std::abs(G.determinant()) < 1e-30)
    throw std::runtime_error("cohesive element: singular mid-surface Jacobian");
  const Eigen::Vector2d c = G.inverse() * dphi;
  return c(0) * sp.t[0] + c(1) * sp.t[1];
}

}  // namespace

Eigen::Matrix<double, 8, 8> quad4_stiffness(const Eigen::Matrix<double, 4, 2>& coords,
                                            const Eigen::Matrix3d& D) {
  static const double xi[4] = {-1, 1, 1, -1};
  static const double et[4] = {-1, -1, 1, 1};
  Eigen::Matrix<double, 8, 8> K = Eigen::Matrix<double, 8, 8>::Zero();
  for (int g = 0; g < 4; ++g) {
    const double gx = kGauss * xi[g], ge = kGauss * et[g];
    Eigen::Matrix<double, 2, 4> dN;
    for (int a = 0; a < 4; ++a) {
      dN(0, a) = 0.25 * xi[a] * (1.0 + ge * et[a]);
      dN(1, a) = 0.25 * et[a] * (1.0 + gx * xi[a]);
    }
    const Eigen::Matrix2d J = dN * coords;
    const double detJ = J.determinant();
    if (detJ <= 0.0) throw std::runtime_error("quad4: non-positive Jacobian");
    const Eigen::Matrix<double, 2, 4> dNx = J.inverse() * dN;
    Eigen::Matrix<double, 3, 8> B = Eigen::Matrix<double, 3, 8>::Zero();
    for (int a = 0; a < 4; ++a) {
      B(0, 2 * a) = dNx(0, a);
      B(1, 2 * a + 1) = dNx(1, a);
      B(2, 2 * a) = dNx(1, a);
      B(2, 2 * a + 1) = dNx(0, a);
    }
    K += B.transpose() * D * B * detJ;
  }
  return K;
}

Eigen::Matrix<double, 24, 24> hex8_stiffness(const Eigen::Matrix<double, 8, 3>& coords,
                                             const Eigen::Matrix<double, 6, 6>& C) {
  static const double xi[8] = {-1, 1, 1, -1, -1, 1, 1, -1};
  static const double et[8] = {-1, -1, 1, 1, -1, -1, 1, 1};
  static const double ze[8] = {-1, -1, -1, -1, 1, 1, 1, 1};
  Eigen::Matrix<double, 24, 24> K = Eigen::Matrix<double, 24, 24>::Zero();
  for (int g = 0; g < 8; ++g) {
    const double gx = kGauss * xi[g], ge = kGauss * et[g], gz = kGauss * ze[g];
    Eigen::Matrix<double, 3, 8> dN;
    for (int a = 0; a < 8; ++a) {
      dN(0, a) = 0.125 * xi[a] * (1.0 + ge * et[a]) * (1.0 + gz * ze[a]);
      dN(1, a) = 0.125 * et[a] * (1.0 + gx * xi[a]) * (1.0 + gz * ze[a]);
      dN(2, a) = 0.125 * ze[a] * (1.0 + gx * xi[a]) * (1.0 + ge * et[a]);
    }
    const Eigen::Matrix3d J = dN * coords;
    const double detJ = J.determinant();
    if (detJ <= 0.0) throw std::runtime_error("hex8: non-positive Jacobian");
    const Eigen::Matrix<double, 3, 8> dNx = J.inverse() * dN;
    Eigen::Matrix<double, 6, 24> B = Eigen::Matrix<double, 6, 24>::Zero();
    for (int a = 0; a < 8; ++a) {
      const double dx = dNx(0, a), dy = dNx(1, a), dz = dNx(2, a);
      B(0, 3 * a) = dx;
      B(1, 3 * a + 1) = dy;
      B(2, 3 * a + 2) = dz;
      B(3, 3 * a + 1) = dz;  // gamma_23
      B(3, 3 * a + 2) = dy;
      B(4, 3 * a) = dz;      // gamma_13
      B(4, 3 * a + 2) = dx;
      B(5, 3 * a) = dy;      // gamma_12
      B(5, 3 * a + 1) = dx;
    }
    K += B.transpose() * C * B * detJ;
  }
  return K;
}

CohesiveKinematics cohesive_kinematics(const Mesh& mesh, int elem,
                                       const Eigen::VectorXd& u) {
  const int nf = mesh.cohesiveNodesPerFace();
  Eigen::Vector3d mid[4], jump[4];
  gatherCohesive(mesh, elem, u, mid, jump);

  CohesiveKinematics kin;
  kin.nip = nf;
  for (int ip = 0; ip < nf; ++ip) {
    // Newton-Cotes points coincide with face nodes.
    for (int a = 0; a < nf; ++a) kin.N[ip][a] = (a == ip) ? 1.0 : 0.0;
    auto& p = kin.pt[ip];
    const SurfacePoint sp = surfacePoint(mesh, mid, ip);
    if (mesh.dim == 2) {
      const double jlen = sp.t[0].norm();
      if (jlen <= 0.0) throw std::runtime_error("cohesive element: degenerate mid-line");
      const Eigen::Vector3d e1 = sp.t[0] / jlen;
      const Eigen::Vector3d e3 = Eigen::Vector3d::UnitZ().cross(e1);
      const Eigen::Vector3d e2 = e3.cross(e1);
      p.R.row(0) = e1;
      p.R.row(1) = e2;
      p.R.row(2) = e3;
      p.weight = jlen;  // per unit width
      p.tangent[0] = e1;
      p.tangent[1] = Eigen::Vector3d::Zero();
    } else {
      const Eigen::Vector3d n = sp.t[0].cross(sp.t[1]);
      const double jlen = n.norm();
      if (jlen <= 0.0) throw std::runtime_error("cohesive element: degenerate mid-surface");
      const Eigen::Vector3d e3 = n / jlen;
      const Eigen::Vector3d e1 = sp.t[0].normalized();
      const Eigen::Vector3d e2 = e3.cross(e1);
      p.R.row(0) = e1;
      p.R.row(1) = e2;
      p.R.row(2) = e3;
      p.weight = jlen;
      p.tangent[0] = e1;
      p.tangent[1] = e2;
    }
    const Eigen::Vector3d d = p.R * jump[ip];
    p.jump = DisplacementJump{d(0), d(1), d(2)};
    const auto& conn = mesh.cohesive[elem];
    p.coord = 0.5 * (mesh.nodes[conn[ip]] + mesh.nodes[conn[ip + nf]]);
  }
  return kin;
}

Eigen::Vector3d cohesive_scalar_gradient(const Mesh& mesh, int elem, int ip,
                                         const Eigen::VectorXd& u,
                                         const std::array<double, 4>& nodal_values) {
  const int nf = mesh.cohesiveNodesPerFace();
  Eigen::Vector3d mid[4], jump[4];
  gatherCohesive(mesh, elem, u, mid, jump);
  const SurfacePoint sp = surfacePoint(mesh, mid, ip);
  return surfaceGradient(sp, nf, nodal_values.data());
}

Eigen::Vector3d cohesive_jump_gradient(const Mesh& mesh, int elem, int ip,
                                       const Eigen::VectorXd& u,
                                       const Eigen::Vector3d& dir) {
  const int nf = mesh.cohesiveNodesPerFace();
  Eigen::Vector3d mid[4], jump[4];
  gatherCohesive(mesh, elem, u, mid, jump);
  const SurfacePoint sp = surfacePoint(mesh, mid, ip);
  Eigen::Vector3d out;
  double v[4];
  for (int c = 0; c < 3; ++c) {
    for (int a = 0; a < nf; ++a) v[a] = jump[a](c);
    out(c) = surfaceGradient(sp, nf, v).dot(dir);
  }
  return out;
}

}  // namespace delam
