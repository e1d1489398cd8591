#include "delam/mesh.hpp"

#include <stdexcept>
#include <string>

namespace delam {

void Mesh::validate() const {
  const int nn = static_cast<int>(nodes.size());
  const int nb = bulkNodes();
  for (size_t e = 0; e < bulk.size(); ++e)
    for (int a = 0; a < nb; ++a)
      if (bulk[e][a] < 0 || bulk[e][a] >= nn)
        throw std::runtime_error("Mesh: bulk element " + std::to_string(e) +
                                 " has out-of-range node index");
  const int nf = cohesiveNodesPerFace();
  for (size_t e = 0; e < cohesive.size(); ++e) {
    for (int a = 0; a < 2 * nf; ++a)
      if (cohesive[e][a] < 0 || cohesive[e][a] >= nn)
        throw std::runtime_error("Mesh: cohesive element " + std::to_string(e) +
                                 " has out-of-range node index");
    for (int a = 0; a < nf; ++a) {
      const auto& lo = nodes[cohesive[e][a]];
      const auto& up = nodes[cohesive[e][a + nf]];
      if ((lo - up).norm() > 1e-9)
        throw std::runtime_error("Mesh: cohesive element " + std::to_string(e) +
                                 " faces not coincident in reference configuration");
    }
  }
  for (const auto& [name, set] : node_sets)
    for (int n : set)
      if (n < 0 || n >= nn)
        throw std::runtime_error("Mesh: node set '" + name + "' has out-of-range index");
}

}  // namespace delam
