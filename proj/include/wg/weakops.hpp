#ifndef WG_WEAKOPS_HPP
#define WG_WEAKOPS_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "wg/basis.hpp"
#include "wg/dofs.hpp"
#include "wg/model.hpp"
#include "wg/poly.hpp"
#include "wg/quadrature.hpp"

namespace wg {

/// Lifting degrees and the quadrature exactness used for one element.
struct LiftingConfig {
  int r1;          // degree of the elliptic lift space P_r1(T)
  int r2;          // degree of the gradient lift space [P_r2(T)]^2
  int quad_degree; // exactness of all cell/edge rules on this element
};

/// Defaults: r1 = k+4 and r2 = r1+1, which reproduce the published
/// convergence tables on both mesh families (on triangles k+4 = 2N+k-2, on
/// the generator pentagons k+4 = N+k-1); quadrature is exact to
/// max(2*max(k,r1,r2)+2, data_degree+k).
LiftingConfig lifting_config(const Element& el, const LocalDofLayout& layout,
                             int data_degree = 0, std::optional<int> r1_override = {},
                             std::optional<int> r2_override = {});

/// Per-element matrices mapping local weak DOFs (element-local order) to the
/// coefficients of the lifted operators in the orthonormal basis:
///   lift_ell:  (dim P_r1) x m,   weak elliptic operator
///   lift_grad: (2 dim P_r2) x m, weak gradient (x block stacked over y block)
/// Columns of flux DOFs carry the element's orientation sign, so assembled
/// forms are independent of the global normal convention.
struct LiftingTables {
  OrthoBasis basis; // orthonormal on P_max(k,r1,r2); prefixes span P_k, P_r1, P_r2
  Eigen::MatrixXd lift_ell;
  Eigen::MatrixXd lift_grad;
  int r1 = 0;
  int r2 = 0;
  QuadRule cell;
  std::vector<QuadRule> edge; // element-local order
};

LiftingTables build_lifting(const PolytopalMesh& mesh, int t, const LocalDofLayout& layout,
                            const KappaMatrix& kappa, const LiftingConfig& cfg);

/// Builds lifting tables for every element (element work runs in parallel;
/// results land in per-element slots, so output is thread-count independent).
std::vector<LiftingTables> build_all_liftings(const PolytopalMesh& mesh,
                                              const LocalDofLayout& layout,
                                              const ModelProblem& model, int data_degree,
                                              std::optional<int> r1_override = {},
                                              std::optional<int> r2_override = {},
                                              unsigned threads = 0);

/// Symmetric positive semidefinite element matrix of the bilinear form
/// (E_w u, E_w v)_T + 2 mu (kappa grad_w u, grad_w v)_T + mu^2 (u0, v0)_T.
Eigen::MatrixXd local_stiffness(const LiftingTables& tables, const LocalDofLayout& layout,
                                int n_edges, const KappaMatrix& kappa, double mu);

/// L2 projection Q_h u = {Q_0 u, Q_b u, Q_g(kappa grad u . n)} onto the weak
/// space; flux coefficients are stored against the global edge normal.
WeakField project_qh(const std::function<double(const Vec2&)>& u,
                     const std::function<Vec2(const Vec2&)>& grad_u,
                     const PolytopalMesh& mesh, const LocalDofLayout& layout,
                     const DofMap& dofs, const std::vector<LiftingTables>& tables,
                     const ModelProblem& model);

WeakField project_qh(const Poly2& u, const PolytopalMesh& mesh,
                     const LocalDofLayout& layout, const DofMap& dofs,
                     const std::vector<LiftingTables>& tables, const ModelProblem& model);

} // namespace wg

#endif
