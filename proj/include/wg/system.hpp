#ifndef WG_SYSTEM_HPP
#define WG_SYSTEM_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "wg/dofs.hpp"
#include "wg/model.hpp"
#include "wg/weakops.hpp"

namespace wg {

enum class SolverKind { direct, cg };
SolverKind parse_solver(const std::string& name);

struct AssembleOptions {
  bool condense = false;           // eliminate element-interior DOFs locally
  bool eliminate_boundary = true;  // move Dirichlet DOFs to the right-hand side
  unsigned threads = 0;
};

/// Sparse symmetric system over the free DOFs, plus everything needed to
/// reconstruct the full weak field after the solve.
struct AssembledSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  Eigen::VectorXd boundary_values;        // full length; nonzero only on masked DOFs
  std::vector<Eigen::Index> free_to_full;
  std::vector<Eigen::Index> full_to_free; // -1 where not part of the global system
  Eigen::Index full_size = 0;
  bool condensed = false;

  struct ElementRecovery {
    Eigen::LLT<Eigen::MatrixXd> interior_factor;
    Eigen::MatrixXd coupling;             // interior x edge block of the element matrix
    Eigen::VectorXd load;                 // interior load
    std::vector<Eigen::Index> edge_dofs;  // global indices of the edge block
    Eigen::Index interior_offset = 0;     // global index of the first interior DOF
  };
  std::vector<ElementRecovery> recovery; // per element, when condensed
};

/// Sets v_b = Q_b(xi) and v_g = Q_g(nu) on boundary edges; free DOFs are
/// copied through unchanged.
WeakField apply_boundary(const WeakField& field, const ModelProblem& model,
                         const PolytopalMesh& mesh, const LocalDofLayout& layout,
                         const DofMap& dofs, const std::vector<LiftingTables>& tables);

AssembledSystem assemble(const PolytopalMesh& mesh, const ModelProblem& model,
                         const LocalDofLayout& layout,
                         const std::vector<LiftingTables>& tables, const DofMap& dofs,
                         const WeakField& boundary, const AssembleOptions& options = {});

/// direct: sparse Cholesky. cg: Jacobi-preconditioned conjugate gradients to
/// relative residual 1e-12 (at most 10 n iterations). The returned field has
/// boundary values re-inserted and condensed interiors recovered.
WeakField solve(const AssembledSystem& system, const DofMap& dofs, SolverKind kind);

/// Matrix in 1-based "row col value" coordinate text format at `path`, and the
/// right-hand side (one value per line) at `path.rhs`.
void dump_system(const AssembledSystem& system, const std::string& path);

} // namespace wg

#endif
