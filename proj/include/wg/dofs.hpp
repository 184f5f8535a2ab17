#ifndef WG_DOFS_HPP
#define WG_DOFS_HPP

#include <Eigen/Dense>
#include <vector>

#include "wg/mesh.hpp"

namespace wg {

/// Per-entity degree-of-freedom counts of the P_k / P_k / P_{k-1} weak space:
/// interior v0 in P_k(T), trace v_b in P_k(e), flux v_g in P_{k-1}(e).
/// Element-local ordering: interior block, then all v_b blocks, then all v_g
/// blocks, edges in element-local order.
struct LocalDofLayout {
  int k;
  int interior_dim;   // dim P_k(T)
  int trace_dim;      // k + 1
  int flux_dim;       // k

  explicit LocalDofLayout(int order);

  int local_size(int n_edges) const {
    return interior_dim + n_edges * (trace_dim + flux_dim);
  }
};

/// Global numbering: all element-interior blocks first (element order), then
/// all v_b blocks (edge order), then all v_g blocks.
struct DofMap {
  LocalDofLayout layout;
  Eigen::Index n_elements = 0;
  Eigen::Index n_edges = 0;
  Eigen::Index total = 0;
  std::vector<bool> boundary_mask; // true on v_b/v_g DOFs of boundary edges

  Eigen::Index interior_start(Eigen::Index t) const { return t * layout.interior_dim; }
  Eigen::Index trace_start(Eigen::Index e) const {
    return n_elements * layout.interior_dim + e * layout.trace_dim;
  }
  Eigen::Index flux_start(Eigen::Index e) const {
    return n_elements * layout.interior_dim + n_edges * layout.trace_dim +
           e * layout.flux_dim;
  }
  Eigen::Index n_boundary_dofs() const;

  /// Global indices of an element's local DOFs, in element-local order.
  std::vector<Eigen::Index> element_dofs(const PolytopalMesh& mesh, int t) const;
};

DofMap build_dofmap(const PolytopalMesh& mesh, const LocalDofLayout& layout);

/// Global coefficient vector over the weak triplet DOFs; v_g coefficients are
/// stored against the global edge normal.
struct WeakField {
  Eigen::VectorXd coeffs;

  static WeakField zero(const DofMap& dofs) {
    return {Eigen::VectorXd::Zero(dofs.total)};
  }
};

} // namespace wg

#endif
