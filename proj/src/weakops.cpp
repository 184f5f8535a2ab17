#include "wg/weakops.hpp"

#include <algorithm>

#include "wg/errors.hpp"
#include "wg/parallel.hpp"

namespace wg {

LiftingConfig lifting_config([[maybe_unused]] const Element& el, const LocalDofLayout& layout,
                             int data_degree, std::optional<int> r1_override,
                             std::optional<int> r2_override) {
  const int r1 = r1_override ? *r1_override : layout.k + 4;
  const int r2 = r2_override ? *r2_override : r1 + 1;
  if (r1 < layout.k) throw ConfigError("r1 must be >= k");
  if (r2 < layout.k - 1) throw ConfigError("r2 must be >= k-1");
  const int rmax = std::max({layout.k, r1, r2});
  return {r1, r2, std::max(2 * rmax + 2, data_degree + layout.k)};
}

LiftingTables build_lifting(const PolytopalMesh& mesh, int t, const LocalDofLayout& layout,
                            const KappaMatrix& kappa, const LiftingConfig& cfg) {
  const Element& el = mesh.elements[t];
  const int n_edges = el.n_edges();
  const int n0 = layout.interior_dim;
  const int n1 = poly_space_dim(cfg.r1);
  const int n2 = poly_space_dim(cfg.r2);
  const int rmax = std::max({layout.k, cfg.r1, cfg.r2});
  const int m = layout.local_size(n_edges);

  QuadRule cell = cell_rule(mesh, t, cfg.quad_degree);
  OrthoBasis basis(el.centroid, el.diameter, rmax, cell);

  LiftingTables tables{std::move(basis), Eigen::MatrixXd::Zero(n1, m),
                       Eigen::MatrixXd::Zero(2 * n2, m), cfg.r1, cfg.r2,
                       std::move(cell), {}};

  // cell contributions against the interior basis (the first n0 functions)
  const Eigen::VectorXd& w = tables.cell.weights;
  {
    const Eigen::MatrixXd vals = tables.basis.eval(tables.cell.points, 0, 0, std::max(n1, n2));
    const Eigen::MatrixXd cx = tables.basis.eval(tables.cell.points, 1, 0, n0);
    const Eigen::MatrixXd cy = tables.basis.eval(tables.cell.points, 0, 1, n0);
    const Eigen::MatrixXd ell_chi =
        kappa.a * tables.basis.eval(tables.cell.points, 2, 0, n0) +
        2.0 * kappa.b * tables.basis.eval(tables.cell.points, 1, 1, n0) +
        kappa.c * tables.basis.eval(tables.cell.points, 0, 2, n0);
    tables.lift_ell.leftCols(n0) = vals.topRows(n1) * w.asDiagonal() * ell_chi.transpose();
    tables.lift_grad.topRows(n2).leftCols(n0) =
        vals.topRows(n2) * w.asDiagonal() * cx.transpose();
    tables.lift_grad.bottomRows(n2).leftCols(n0) =
        vals.topRows(n2) * w.asDiagonal() * cy.transpose();
  }

  tables.edge.reserve(n_edges);
  for (int a = 0; a < n_edges; ++a) {
    const Edge& ed = mesh.edges[el.edges[a]];
    const double sigma = el.sigma[a];
    const Vec2 n_out = sigma * ed.normal;
    const Vec2 kn(kappa.a * n_out.x() + kappa.b * n_out.y(),
                  kappa.b * n_out.x() + kappa.c * n_out.y());

    QuadRule er = edge_rule(mesh, el.edges[a], cfg.quad_degree);
    const Eigen::VectorXd& we = er.weights;
    const Eigen::MatrixXd vals = tables.basis.eval(er.points, 0, 0, std::max(n1, n2));
    const Eigen::MatrixXd gx = tables.basis.eval(er.points, 1, 0, std::max(n0, n1));
    const Eigen::MatrixXd gy = tables.basis.eval(er.points, 0, 1, std::max(n0, n1));
    const Eigen::MatrixXd traces = edge_basis_values(layout.trace_dim, er.edge_param, ed.length);

    // kappa grad phi . n for the lift test space and for the interior basis
    const Eigen::MatrixXd kgrad_phi =
        kn.x() * gx.topRows(n1) + kn.y() * gy.topRows(n1);
    const Eigen::MatrixXd kgrad_chi = kn.x() * gx.topRows(n0) + kn.y() * gy.topRows(n0);

    const auto chi = vals.topRows(n0);
    const int vb_col = n0 + a * layout.trace_dim;
    const int vg_col = n0 + n_edges * layout.trace_dim + a * layout.flux_dim;

    // (E_w v, phi)_T = (E v0, phi)_T + <v0 - v_b, kappa grad phi . n>
    //                  - <kappa grad v0 . n - v_g, phi>
    tables.lift_ell.leftCols(n0) += kgrad_phi * we.asDiagonal() * chi.transpose();
    tables.lift_ell.leftCols(n0) -=
        vals.topRows(n1) * we.asDiagonal() * kgrad_chi.transpose();
    tables.lift_ell.middleCols(vb_col, layout.trace_dim) -=
        kgrad_phi * we.asDiagonal() * traces.transpose();
    tables.lift_ell.middleCols(vg_col, layout.flux_dim) +=
        sigma * vals.topRows(n1) * we.asDiagonal() *
        traces.topRows(layout.flux_dim).transpose();

    // (grad_w v, psi)_T = (grad v0, psi)_T - <v0 - v_b, psi . n>
    const auto psi = vals.topRows(n2);
    tables.lift_grad.topRows(n2).leftCols(n0) -=
        n_out.x() * psi * we.asDiagonal() * chi.transpose();
    tables.lift_grad.bottomRows(n2).leftCols(n0) -=
        n_out.y() * psi * we.asDiagonal() * chi.transpose();
    tables.lift_grad.topRows(n2).middleCols(vb_col, layout.trace_dim) +=
        n_out.x() * psi * we.asDiagonal() * traces.transpose();
    tables.lift_grad.bottomRows(n2).middleCols(vb_col, layout.trace_dim) +=
        n_out.y() * psi * we.asDiagonal() * traces.transpose();

    tables.edge.push_back(std::move(er));
  }
  return tables;
}

std::vector<LiftingTables> build_all_liftings(const PolytopalMesh& mesh,
                                              const LocalDofLayout& layout,
                                              const ModelProblem& model, int data_degree,
                                              std::optional<int> r1_override,
                                              std::optional<int> r2_override,
                                              unsigned threads) {
  const std::size_t n = mesh.elements.size();
  std::vector<std::optional<LiftingTables>> slots(n);
  parallel_for(
      n,
      [&](std::size_t t) {
        const auto cfg = lifting_config(mesh.elements[t], layout, data_degree,
                                        r1_override, r2_override);
        slots[t] = build_lifting(mesh, static_cast<int>(t), layout,
                                 model.kappa_on(static_cast<int>(t)), cfg);
      },
      threads);
  std::vector<LiftingTables> tables;
  tables.reserve(n);
  for (auto& s : slots) tables.push_back(std::move(*s));
  return tables;
}

Eigen::MatrixXd local_stiffness(const LiftingTables& tables, const LocalDofLayout& layout,
                                int n_edges, const KappaMatrix& kappa, double mu) {
  const int n2 = poly_space_dim(tables.r2);
  const auto gx = tables.lift_grad.topRows(n2);
  const auto gy = tables.lift_grad.bottomRows(n2);
  Eigen::MatrixXd k_mat = tables.lift_ell.transpose() * tables.lift_ell;
  k_mat += 2.0 * mu *
           (kappa.a * gx.transpose() * gx + kappa.c * gy.transpose() * gy +
            kappa.b * (gx.transpose() * gy + gy.transpose() * gx));
  // orthonormal interior basis: the mass block is the identity
  k_mat.diagonal().head(layout.interior_dim).array() += mu * mu;
  (void)n_edges;
  return 0.5 * (k_mat + k_mat.transpose());
}

WeakField project_qh(const std::function<double(const Vec2&)>& u,
                     const std::function<Vec2(const Vec2&)>& grad_u,
                     const PolytopalMesh& mesh, const LocalDofLayout& layout,
                     const DofMap& dofs, const std::vector<LiftingTables>& tables,
                     const ModelProblem& model) {
  WeakField field = WeakField::zero(dofs);

  for (std::size_t t = 0; t < mesh.elements.size(); ++t) {
    const QuadRule& cell = tables[t].cell;
    Eigen::VectorXd uvals(cell.size());
    for (Eigen::Index q = 0; q < cell.size(); ++q) uvals[q] = u(cell.points.col(q));
    const Eigen::MatrixXd chi = tables[t].basis.eval(cell.points, 0, 0, layout.interior_dim);
    field.coeffs.segment(dofs.interior_start(t), layout.interior_dim) =
        chi * cell.weights.cwiseProduct(uvals);
  }

  for (std::size_t e = 0; e < mesh.edges.size(); ++e) {
    const Edge& ed = mesh.edges[e];
    const int owner = ed.elems[0];
    const Element& el = mesh.elements[owner];
    const int local = static_cast<int>(
        std::find(el.edges.begin(), el.edges.end(), static_cast<int>(e)) - el.edges.begin());
    const QuadRule& er = tables[owner].edge[local];
    const Eigen::MatrixXd traces = edge_basis_values(layout.trace_dim, er.edge_param, ed.length);
    const KappaMatrix& kappa = model.kappa_on(owner);

    Eigen::VectorXd uvals(er.size()), fvals(er.size());
    for (Eigen::Index q = 0; q < er.size(); ++q) {
      const Vec2 x = er.points.col(q);
      uvals[q] = u(x);
      const Vec2 g = grad_u(x);
      const Vec2 kg(kappa.a * g.x() + kappa.b * g.y(), kappa.b * g.x() + kappa.c * g.y());
      fvals[q] = kg.dot(ed.normal); // flux against the global normal
    }
    field.coeffs.segment(dofs.trace_start(e), layout.trace_dim) =
        traces * er.weights.cwiseProduct(uvals);
    field.coeffs.segment(dofs.flux_start(e), layout.flux_dim) =
        traces.topRows(layout.flux_dim) * er.weights.cwiseProduct(fvals);
  }
  return field;
}

WeakField project_qh(const Poly2& u, const PolytopalMesh& mesh,
                     const LocalDofLayout& layout, const DofMap& dofs,
                     const std::vector<LiftingTables>& tables, const ModelProblem& model) {
  const Poly2 ux = u.diff(Axis::X);
  const Poly2 uy = u.diff(Axis::Y);
  return project_qh([&u](const Vec2& x) { return u(x.x(), x.y()); },
                    [&ux, &uy](const Vec2& x) {
                      return Vec2(ux(x.x(), x.y()), uy(x.x(), x.y()));
                    },
                    mesh, layout, dofs, tables, model);
}

} // namespace wg
