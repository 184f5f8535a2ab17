#include "wg/system.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cstdio>
#include <fstream>

#include "wg/errors.hpp"
#include "wg/parallel.hpp"

namespace wg {

SolverKind parse_solver(const std::string& name) {
  if (name == "direct") return SolverKind::direct;
  if (name == "cg") return SolverKind::cg;
  throw ConfigError("unknown solver '" + name + "' (expected direct or cg)");
}

WeakField apply_boundary(const WeakField& field, const ModelProblem& model,
                         const PolytopalMesh& mesh, const LocalDofLayout& layout,
                         const DofMap& dofs, const std::vector<LiftingTables>& tables) {
  WeakField out = field;
  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const Edge& ed = mesh.edges[e];
    if (!ed.boundary) continue;
    const int owner = ed.elems[0];
    const Element& el = mesh.elements[owner];
    const int local = static_cast<int>(
        std::find(el.edges.begin(), el.edges.end(), static_cast<int>(e)) - el.edges.begin());
    const QuadRule& er = tables[owner].edge[local];
    const Eigen::MatrixXd traces = edge_basis_values(layout.trace_dim, er.edge_param, ed.length);

    Eigen::VectorXd xi(er.size()), nu(er.size());
    for (Eigen::Index q = 0; q < er.size(); ++q) {
      const Vec2 x = er.points.col(q);
      xi[q] = model.dirichlet ? model.dirichlet(x) : 0.0;
      nu[q] = model.neumann ? model.neumann(x, ed.normal) : 0.0;
    }
    out.coeffs.segment(dofs.trace_start(e), layout.trace_dim) =
        traces * er.weights.cwiseProduct(xi);
    out.coeffs.segment(dofs.flux_start(e), layout.flux_dim) =
        traces.topRows(layout.flux_dim) * er.weights.cwiseProduct(nu);
  }
  return out;
}

AssembledSystem assemble(const PolytopalMesh& mesh, const ModelProblem& model,
                         const LocalDofLayout& layout,
                         const std::vector<LiftingTables>& tables, const DofMap& dofs,
                         const WeakField& boundary, const AssembleOptions& options) {
  const std::size_t n_elems = mesh.elements.size();
  const int n0 = layout.interior_dim;

  // per-element matrices and loads, parallel over elements
  std::vector<Eigen::MatrixXd> k_loc(n_elems);
  std::vector<Eigen::VectorXd> l_loc(n_elems);
  parallel_for(
      n_elems,
      [&](std::size_t t) {
        const Element& el = mesh.elements[t];
        k_loc[t] = local_stiffness(tables[t], layout, el.n_edges(), model.kappa_on(t),
                                   model.mu_on(t));
        const QuadRule& cell = tables[t].cell;
        Eigen::VectorXd fvals(cell.size());
        for (Eigen::Index q = 0; q < cell.size(); ++q)
          fvals[q] = model.f(cell.points(0, q), cell.points(1, q));
        l_loc[t] = Eigen::VectorXd::Zero(k_loc[t].rows());
        l_loc[t].head(n0) = tables[t].basis.eval(cell.points, 0, 0, n0) *
                            cell.weights.cwiseProduct(fvals);
      },
      options.threads);

  AssembledSystem sys;
  sys.full_size = dofs.total;
  sys.condensed = options.condense;
  sys.boundary_values = Eigen::VectorXd::Zero(dofs.total);
  if (options.eliminate_boundary)
    for (Eigen::Index i = 0; i < dofs.total; ++i)
      if (dofs.boundary_mask[i]) sys.boundary_values[i] = boundary.coeffs[i];

  // free-DOF numbering: masked DOFs are eliminated; with condensation the
  // element-interior DOFs are handled locally and leave the global system
  sys.full_to_free.assign(dofs.total, -1);
  for (Eigen::Index i = 0; i < dofs.total; ++i) {
    if (options.eliminate_boundary && dofs.boundary_mask[i]) continue;
    if (options.condense && i < dofs.n_elements * n0) continue;
    sys.full_to_free[i] = static_cast<Eigen::Index>(sys.free_to_full.size());
    sys.free_to_full.push_back(i);
  }
  const Eigen::Index n_free = static_cast<Eigen::Index>(sys.free_to_full.size());

  Eigen::VectorXd rhs_full = Eigen::VectorXd::Zero(dofs.total);
  std::vector<Eigen::Triplet<double>> triplets;
  if (options.condense) sys.recovery.resize(n_elems);

  for (std::size_t t = 0; t < n_elems; ++t) {
    const auto gdofs = dofs.element_dofs(mesh, static_cast<int>(t));
    Eigen::MatrixXd k_el;
    Eigen::VectorXd l_el;
    std::vector<Eigen::Index> rows;
    if (options.condense) {
      const Eigen::Index mb = static_cast<Eigen::Index>(gdofs.size()) - n0;
      auto& rec = sys.recovery[t];
      rec.interior_factor.compute(k_loc[t].topLeftCorner(n0, n0));
      if (rec.interior_factor.info() != Eigen::Success)
        throw SolverError("static condensation: interior block not SPD on element " +
                          std::to_string(t));
      rec.coupling = k_loc[t].topRightCorner(n0, mb);
      rec.load = l_loc[t].head(n0);
      rec.edge_dofs.assign(gdofs.begin() + n0, gdofs.end());
      rec.interior_offset = dofs.interior_start(static_cast<Eigen::Index>(t));
      const Eigen::MatrixXd inv_coupling = rec.interior_factor.solve(rec.coupling);
      k_el = k_loc[t].bottomRightCorner(mb, mb) - rec.coupling.transpose() * inv_coupling;
      k_el = 0.5 * (k_el + k_el.transpose());
      l_el = -rec.coupling.transpose() * rec.interior_factor.solve(rec.load);
      rows.assign(gdofs.begin() + n0, gdofs.end());
    } else {
      k_el = k_loc[t];
      l_el = l_loc[t];
      rows = gdofs;
    }
    for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(rows.size()); ++i) {
      const Eigen::Index gi = rows[i];
      const Eigen::Index fi = sys.full_to_free[gi];
      if (fi < 0) continue;
      rhs_full[gi] += l_el[i];
      for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(rows.size()); ++j) {
        const Eigen::Index gj = rows[j];
        const Eigen::Index fj = sys.full_to_free[gj];
        if (fj >= 0)
          triplets.emplace_back(fi, fj, k_el(i, j));
        else if (options.eliminate_boundary && dofs.boundary_mask[gj])
          rhs_full[gi] -= k_el(i, j) * sys.boundary_values[gj];
      }
    }
  }

  sys.matrix.resize(n_free, n_free);
  sys.matrix.setFromTriplets(triplets.begin(), triplets.end());
  sys.matrix.makeCompressed();
  sys.rhs.resize(n_free);
  for (Eigen::Index i = 0; i < n_free; ++i) sys.rhs[i] = rhs_full[sys.free_to_full[i]];
  return sys;
}

WeakField solve(const AssembledSystem& system, const DofMap& dofs, SolverKind kind) {
  Eigen::VectorXd x_free;
  if (kind == SolverKind::direct) {
    Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(system.matrix);
    if (llt.info() != Eigen::Success)
      throw SolverError("sparse Cholesky factorization failed (matrix not SPD)");
    x_free = llt.solve(system.rhs);
    if (llt.info() != Eigen::Success) throw SolverError("sparse Cholesky solve failed");
  } else {
    Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper>
        cg(system.matrix);
    cg.setTolerance(1e-12);
    cg.setMaxIterations(10 * system.matrix.rows());
    x_free = cg.solve(system.rhs);
    if (cg.info() != Eigen::Success)
      throw SolverError("cg did not converge: relative residual " +
                        std::to_string(cg.error()) + " after " +
                        std::to_string(cg.iterations()) + " iterations");
  }

  WeakField field{system.boundary_values};
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(system.free_to_full.size()); ++i)
    field.coeffs[system.free_to_full[i]] = x_free[i];

  if (system.condensed) {
    const int n0 = dofs.layout.interior_dim;
    for (const auto& rec : system.recovery) {
      Eigen::VectorXd edge_vals(rec.coupling.cols());
      for (Eigen::Index j = 0; j < edge_vals.size(); ++j)
        edge_vals[j] = field.coeffs[rec.edge_dofs[j]];
      field.coeffs.segment(rec.interior_offset, n0) =
          rec.interior_factor.solve(rec.load - rec.coupling * edge_vals);
    }
  }
  return field;
}

void dump_system(const AssembledSystem& system, const std::string& path) {
  std::ofstream mat(path);
  if (!mat) throw ConfigError("cannot write system matrix to '" + path + "'");
  char buf[96];
  mat << system.matrix.rows() << " " << system.matrix.cols() << " "
      << system.matrix.nonZeros() << "\n";
  for (int k = 0; k < system.matrix.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(system.matrix, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g", static_cast<long>(it.row() + 1),
                    static_cast<long>(it.col() + 1), it.value());
      mat << buf << "\n";
    }
  std::ofstream rhs(path + ".rhs");
  if (!rhs) throw ConfigError("cannot write right-hand side to '" + path + ".rhs'");
  for (Eigen::Index i = 0; i < system.rhs.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", system.rhs[i]);
    rhs << buf << "\n";
  }
}

} // namespace wg
