#ifndef WG_STUDY_HPP
#define WG_STUDY_HPP

#include <optional>
#include <string>
#include <vector>

#include "wg/system.hpp"

namespace wg {

/// A manufactured test problem: exact polynomial solution plus coefficients;
/// f, xi, nu are derived analytically so discretization error is the only
/// error measured.
struct ModelCase {
  std::string name;
  KappaMatrix kappa;
  double mu = 1.0;
  Poly2 u;
  Poly2 f;

  ModelProblem problem() const;
  int data_degree() const;

  static ModelCase s1(); // kappa = 2I,             mu = 1, u = (x-x^2)^2 (y-y^2)^2
  static ModelCase s2(); // kappa = [[2,-1],[-1,2]], mu = 1, same u
  static ModelCase custom(std::string name, Poly2 u, KappaMatrix kappa, double mu);
};

struct StudyConfig {
  std::optional<int> r1;
  std::optional<int> r2;
  SolverKind solver = SolverKind::direct;
  bool condense = false;
  unsigned threads = 0;
};

/// One solved level with its errors, ready for rate computation.
struct SolveReport {
  MeshFamily family = MeshFamily::triangular;
  int level = 0;
  int k = 0;
  int r1 = 0;
  int r2 = 0;
  Eigen::Index n_elements = 0;
  Eigen::Index n_edges = 0;
  Eigen::Index total_dofs = 0;
  Eigen::Index free_dofs = 0;
  Eigen::Index boundary_dofs = 0;
  double h = 0.0;
  double e_l2 = 0.0;
  double e_grad = 0.0;
  double e_ell = 0.0;
  double seconds_tables = 0.0;
  double seconds_assemble = 0.0;
  double seconds_solve = 0.0;
  WeakField solution;
};

SolveReport solve_case(const ModelCase& mcase, MeshFamily family, int level, int k,
                       const StudyConfig& config, const std::string& dump_path = {});

struct ConvergenceRow {
  int level = 0;
  Eigen::Index n_elements = 0;
  double h = 0.0;
  double e_l2 = 0.0;
  double e_grad = 0.0;
  double e_ell = 0.0;
  std::optional<double> order_l2;
  std::optional<double> order_grad;
  std::optional<double> order_ell;
};

struct ConvergenceTable {
  std::string case_name;
  MeshFamily family = MeshFamily::triangular;
  int k = 0;
  int r1 = 0;
  int r2 = 0;
  std::vector<ConvergenceRow> rows;
};

/// Generates the mesh, assembles, solves, and measures errors per level, then
/// fills in the successive log2 rates. Levels run sequentially.
ConvergenceTable run_convergence(const ModelCase& mcase, MeshFamily family, int k,
                                 int level_lo, int level_hi, const StudyConfig& config);

/// || Q_0 u - u_0 ||, || grad_w(Q_h u - u_h) ||, || E_w(Q_h u - u_h) ||
/// (coefficient norms in the orthonormal bases; no kappa weighting).
std::array<double, 3> error_norms(const WeakField& u_h, const ModelCase& mcase,
                                  const PolytopalMesh& mesh, const LocalDofLayout& layout,
                                  const DofMap& dofs, const std::vector<LiftingTables>& tables);

/// |||v|||^2 = sum_T ||E_w v||^2 + 2 mu ||kappa^(1/2) grad_w v||^2 + mu^2 ||v0||^2.
double energy_norm(const WeakField& v, const PolytopalMesh& mesh,
                   const LocalDofLayout& layout, const DofMap& dofs,
                   const std::vector<LiftingTables>& tables, const ModelProblem& model);

struct H2NormParts {
  double volume = 0.0;
  double jumps = 0.0;
};

/// Discrete H2 semi-norm: element terms ||E v0||^2, 2 mu ||kappa^(1/2) grad v0||^2,
/// mu^2 ||v0||^2 plus the h^-1 flux-jump and h^-3 trace-jump boundary terms.
double discrete_h2_norm(const WeakField& v, const PolytopalMesh& mesh,
                        const LocalDofLayout& layout, const DofMap& dofs,
                        const std::vector<LiftingTables>& tables, const ModelProblem& model,
                        H2NormParts* parts = nullptr);

/// "0.128E-4"-style float with three significant digits.
std::string format_sci3(double x);

/// Text table mirroring the published layout (errors at 3 significant digits,
/// orders at one decimal).
std::string format_table(const ConvergenceTable& table);

/// CSV with header level,n_elements,h,e_l2,order_l2,e_grad,order_grad,e_ell,order_ell
/// and floats at 6 significant digits.
std::string format_csv(const ConvergenceTable& table);

} // namespace wg

#endif
