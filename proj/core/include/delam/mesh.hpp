#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace delam {

// Bulk elements are 4-node plane-strain quads in 2D and 8-node solids in
// 3D. Cohesive elements pair a lower and an upper face (2+2 nodes in 2D,
// 4+4 in 3D) that are coincident in the reference configuration.
struct Mesh {
  int dim = 2;
  std::vector<Eigen::Vector3d> nodes;                 // mm; z unused in 2D
  std::vector<std::array<int, 8>> bulk;               // quad4 uses slots 0..3
  std::vector<std::array<int, 8>> cohesive;           // lower nodes first
  std::map<std::string, std::vector<int>> node_sets;  // named boundary groups

  // Structured index of the cohesive interface: grid of element ids,
  // i along X1 (length), j along X2 (width; nj=1 in 2D). -1 marks a hole.
  int iface_ni = 0;
  int iface_nj = 0;
  std::vector<int> iface_grid;

  int cohesiveNodesPerFace() const { return dim == 2 ? 2 : 4; }
  int bulkNodes() const { return dim == 2 ? 4 : 8; }
  int dofsPerNode() const { return dim; }
  int numDofs() const { return static_cast<int>(nodes.size()) * dim; }

  int ifaceAt(int i, int j) const { return iface_grid[static_cast<size_t>(j) * iface_ni + i]; }

  /// Checks connectivity bounds and cohesive face coincidence.
  void validate() const;
};

}  // namespace delam
