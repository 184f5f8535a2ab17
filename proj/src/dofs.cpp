#include "wg/dofs.hpp"

#include "wg/errors.hpp"

namespace wg {

LocalDofLayout::LocalDofLayout(int order)
    : k(order),
      interior_dim((order + 1) * (order + 2) / 2),
      trace_dim(order + 1),
      flux_dim(order) {
  if (order < 2) throw ConfigError("polynomial order k must be >= 2");
}

Eigen::Index DofMap::n_boundary_dofs() const {
  Eigen::Index n = 0;
  for (bool m : boundary_mask) n += m ? 1 : 0;
  return n;
}

std::vector<Eigen::Index> DofMap::element_dofs(const PolytopalMesh& mesh, int t) const {
  const Element& el = mesh.elements[t];
  std::vector<Eigen::Index> dofs;
  dofs.reserve(layout.local_size(el.n_edges()));
  for (int j = 0; j < layout.interior_dim; ++j)
    dofs.push_back(interior_start(t) + j);
  for (int e : el.edges)
    for (int j = 0; j < layout.trace_dim; ++j)
      dofs.push_back(trace_start(e) + j);
  for (int e : el.edges)
    for (int j = 0; j < layout.flux_dim; ++j)
      dofs.push_back(flux_start(e) + j);
  return dofs;
}

DofMap build_dofmap(const PolytopalMesh& mesh, const LocalDofLayout& layout) {
  DofMap dofs{layout};
  dofs.n_elements = static_cast<Eigen::Index>(mesh.elements.size());
  dofs.n_edges = static_cast<Eigen::Index>(mesh.edges.size());
  dofs.total = dofs.n_elements * layout.interior_dim +
               dofs.n_edges * (layout.trace_dim + layout.flux_dim);
  dofs.boundary_mask.assign(dofs.total, false);
  for (Eigen::Index e = 0; e < dofs.n_edges; ++e) {
    if (!mesh.edges[e].boundary) continue;
    for (int j = 0; j < layout.trace_dim; ++j)
      dofs.boundary_mask[dofs.trace_start(e) + j] = true;
    for (int j = 0; j < layout.flux_dim; ++j)
      dofs.boundary_mask[dofs.flux_start(e) + j] = true;
  }
  return dofs;
}

} // namespace wg
