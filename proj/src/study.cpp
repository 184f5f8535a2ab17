#include "wg/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "wg/errors.hpp"

namespace wg {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<Eigen::Index>& idx) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(idx.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = v[idx[i]];
  return out;
}

} // namespace

ModelProblem ModelCase::problem() const {
  ModelProblem model = manufactured_problem(u, kappa, mu);
  return model;
}

int ModelCase::data_degree() const { return std::max(u.degree(), f.degree()); }

namespace {

Poly2 bump_solution() {
  // (x - x^2)^2 (y - y^2)^2
  Poly2 gx = Poly2::monomial(1, 0) - Poly2::monomial(2, 0);
  Poly2 gy = Poly2::monomial(0, 1) - Poly2::monomial(0, 2);
  return gx * gx * gy * gy;
}

} // namespace

ModelCase ModelCase::s1() {
  ModelCase c;
  c.name = "s1";
  c.kappa = {2.0, 0.0, 2.0};
  c.mu = 1.0;
  c.u = bump_solution();
  c.f = manufactured_rhs(c.u, c.kappa, c.mu);
  return c;
}

ModelCase ModelCase::s2() {
  ModelCase c;
  c.name = "s2";
  c.kappa = {2.0, -1.0, 2.0};
  c.mu = 1.0;
  c.u = bump_solution();
  c.f = manufactured_rhs(c.u, c.kappa, c.mu);
  return c;
}

ModelCase ModelCase::custom(std::string name, Poly2 u, KappaMatrix kappa, double mu) {
  if (!kappa.spd()) throw ConfigError("kappa must be symmetric positive definite");
  if (mu < 0.0) throw ConfigError("mu must be nonnegative");
  ModelCase c;
  c.name = std::move(name);
  c.kappa = kappa;
  c.mu = mu;
  c.u = std::move(u);
  c.f = manufactured_rhs(c.u, c.kappa, c.mu);
  return c;
}

SolveReport solve_case(const ModelCase& mcase, MeshFamily family, int level, int k,
                       const StudyConfig& config, const std::string& dump_path) {
  const PolytopalMesh mesh =
      family == MeshFamily::triangular ? gen_triangular(level) : gen_pentagonal(level);
  const LocalDofLayout layout(k);
  const ModelProblem model = mcase.problem();

  SolveReport report;
  report.family = family;
  report.level = level;
  report.k = k;
  report.n_elements = static_cast<Eigen::Index>(mesh.elements.size());
  report.n_edges = static_cast<Eigen::Index>(mesh.edges.size());
  for (const Element& el : mesh.elements) report.h = std::max(report.h, el.diameter);

  auto t0 = std::chrono::steady_clock::now();
  const auto tables = build_all_liftings(mesh, layout, model, mcase.data_degree(),
                                         config.r1, config.r2, config.threads);
  report.seconds_tables = seconds_since(t0);
  report.r1 = tables[0].r1;
  report.r2 = tables[0].r2;

  const DofMap dofs = build_dofmap(mesh, layout);
  report.total_dofs = dofs.total;
  report.boundary_dofs = dofs.n_boundary_dofs();

  t0 = std::chrono::steady_clock::now();
  const WeakField bc = apply_boundary(WeakField::zero(dofs), model, mesh, layout, dofs, tables);
  AssembleOptions opts;
  opts.condense = config.condense;
  opts.threads = config.threads;
  const AssembledSystem sys = assemble(mesh, model, layout, tables, dofs, bc, opts);
  report.seconds_assemble = seconds_since(t0);
  report.free_dofs = static_cast<Eigen::Index>(sys.free_to_full.size());
  if (!dump_path.empty()) dump_system(sys, dump_path);

  t0 = std::chrono::steady_clock::now();
  report.solution = solve(sys, dofs, config.solver);
  report.seconds_solve = seconds_since(t0);

  const auto errs = error_norms(report.solution, mcase, mesh, layout, dofs, tables);
  report.e_l2 = errs[0];
  report.e_grad = errs[1];
  report.e_ell = errs[2];
  return report;
}

ConvergenceTable run_convergence(const ModelCase& mcase, MeshFamily family, int k,
                                 int level_lo, int level_hi, const StudyConfig& config) {
  if (k < 2 || k > 4)
    throw ConfigError("convergence studies support k in {2, 3, 4}");
  if (level_lo < 1 || level_hi > 7 || level_lo > level_hi)
    throw ConfigError("convergence levels must be an ascending range within [1, 7]");

  ConvergenceTable table;
  table.case_name = mcase.name;
  table.family = family;
  table.k = k;
  for (int level = level_lo; level <= level_hi; ++level) {
    const SolveReport report = solve_case(mcase, family, level, k, config);
    table.r1 = report.r1;
    table.r2 = report.r2;
    ConvergenceRow row;
    row.level = level;
    row.n_elements = report.n_elements;
    row.h = report.h;
    row.e_l2 = report.e_l2;
    row.e_grad = report.e_grad;
    row.e_ell = report.e_ell;
    if (!table.rows.empty()) {
      const ConvergenceRow& prev = table.rows.back();
      row.order_l2 = std::log2(prev.e_l2 / row.e_l2);
      row.order_grad = std::log2(prev.e_grad / row.e_grad);
      row.order_ell = std::log2(prev.e_ell / row.e_ell);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::array<double, 3> error_norms(const WeakField& u_h, const ModelCase& mcase,
                                  const PolytopalMesh& mesh, const LocalDofLayout& layout,
                                  const DofMap& dofs,
                                  const std::vector<LiftingTables>& tables) {
  const ModelProblem model = mcase.problem();
  const WeakField qhu = project_qh(mcase.u, mesh, layout, dofs, tables, model);
  const Eigen::VectorXd diff = qhu.coeffs - u_h.coeffs;

  double l2 = 0.0, grad = 0.0, ell = 0.0;
  for (std::size_t t = 0; t < mesh.elements.size(); ++t) {
    const auto idx = dofs.element_dofs(mesh, static_cast<int>(t));
    const Eigen::VectorXd local = gather(diff, idx);
    l2 += local.head(layout.interior_dim).squaredNorm();
    grad += (tables[t].lift_grad * local).squaredNorm();
    ell += (tables[t].lift_ell * local).squaredNorm();
  }
  return {std::sqrt(l2), std::sqrt(grad), std::sqrt(ell)};
}

double energy_norm(const WeakField& v, const PolytopalMesh& mesh,
                   const LocalDofLayout& layout, const DofMap& dofs,
                   const std::vector<LiftingTables>& tables, const ModelProblem& model) {
  double total = 0.0;
  for (std::size_t t = 0; t < mesh.elements.size(); ++t) {
    const auto idx = dofs.element_dofs(mesh, static_cast<int>(t));
    const Eigen::VectorXd local = gather(v.coeffs, idx);
    const KappaMatrix& kappa = model.kappa_on(static_cast<int>(t));
    const double mu = model.mu_on(static_cast<int>(t));
    const int n2 = poly_space_dim(tables[t].r2);
    const Eigen::VectorXd g = tables[t].lift_grad * local;
    const auto gx = g.head(n2);
    const auto gy = g.tail(n2);
    total += (tables[t].lift_ell * local).squaredNorm();
    total += 2.0 * mu *
             (kappa.a * gx.squaredNorm() + 2.0 * kappa.b * gx.dot(gy) +
              kappa.c * gy.squaredNorm());
    total += mu * mu * local.head(layout.interior_dim).squaredNorm();
  }
  return std::sqrt(total);
}

double discrete_h2_norm(const WeakField& v, const PolytopalMesh& mesh,
                        const LocalDofLayout& layout, const DofMap& dofs,
                        const std::vector<LiftingTables>& tables, const ModelProblem& model,
                        H2NormParts* parts) {
  double volume = 0.0, jumps = 0.0;
  for (std::size_t t = 0; t < mesh.elements.size(); ++t) {
    const Element& el = mesh.elements[t];
    const KappaMatrix& kappa = model.kappa_on(static_cast<int>(t));
    const double mu = model.mu_on(static_cast<int>(t));
    const Eigen::VectorXd v0 =
        v.coeffs.segment(dofs.interior_start(static_cast<Eigen::Index>(t)), layout.interior_dim);

    const QuadRule& cell = tables[t].cell;
    const OrthoBasis& basis = tables[t].basis;
    const int n0 = layout.interior_dim;
    const Eigen::VectorXd vals = basis.eval(cell.points, 0, 0, n0).transpose() * v0;
    const Eigen::VectorXd vx = basis.eval(cell.points, 1, 0, n0).transpose() * v0;
    const Eigen::VectorXd vy = basis.eval(cell.points, 0, 1, n0).transpose() * v0;
    const Eigen::VectorXd ell =
        (kappa.a * basis.eval(cell.points, 2, 0, n0) +
         2.0 * kappa.b * basis.eval(cell.points, 1, 1, n0) +
         kappa.c * basis.eval(cell.points, 0, 2, n0))
            .transpose() *
        v0;
    volume += cell.weights.dot(ell.cwiseProduct(ell));
    volume += 2.0 * mu *
              cell.weights.dot((kappa.a * vx.cwiseProduct(vx) +
                                2.0 * kappa.b * vx.cwiseProduct(vy) +
                                kappa.c * vy.cwiseProduct(vy)));
    volume += mu * mu * cell.weights.dot(vals.cwiseProduct(vals));

    for (int a = 0; a < el.n_edges(); ++a) {
      const Edge& ed = mesh.edges[el.edges[a]];
      const double sigma = el.sigma[a];
      const Vec2 n_out = sigma * ed.normal;
      const QuadRule& er = tables[t].edge[a];
      const Eigen::MatrixXd traces =
          edge_basis_values(layout.trace_dim, er.edge_param, ed.length);

      const Eigen::VectorXd tv = basis.eval(er.points, 0, 0, n0).transpose() * v0;
      const Eigen::VectorXd tx = basis.eval(er.points, 1, 0, n0).transpose() * v0;
      const Eigen::VectorXd ty = basis.eval(er.points, 0, 1, n0).transpose() * v0;
      const Eigen::VectorXd flux =
          (kappa.a * n_out.x() + kappa.b * n_out.y()) * tx +
          (kappa.b * n_out.x() + kappa.c * n_out.y()) * ty;

      const Eigen::VectorXd vb =
          traces.transpose() *
          v.coeffs.segment(dofs.trace_start(el.edges[a]), layout.trace_dim);
      const Eigen::VectorXd vg =
          sigma * traces.topRows(layout.flux_dim).transpose() *
          v.coeffs.segment(dofs.flux_start(el.edges[a]), layout.flux_dim);

      const Eigen::VectorXd flux_jump = flux - vg;
      const Eigen::VectorXd trace_jump = tv - vb;
      jumps += er.weights.dot(flux_jump.cwiseProduct(flux_jump)) / el.diameter;
      jumps += er.weights.dot(trace_jump.cwiseProduct(trace_jump)) /
               (el.diameter * el.diameter * el.diameter);
    }
  }
  if (parts) *parts = {volume, jumps};
  return std::sqrt(volume + jumps);
}

std::string format_sci3(double x) {
  char buf[48];
  if (x == 0.0) return "0.000E+0";
  const double ax = std::abs(x);
  int e = static_cast<int>(std::floor(std::log10(ax))) + 1;
  double m = x / std::pow(10.0, e);
  while (std::abs(m) >= 1.0) {
    m /= 10.0;
    ++e;
  }
  while (std::abs(m) < 0.1) {
    m *= 10.0;
    --e;
  }
  double rounded = std::round(m * 1000.0) / 1000.0;
  if (std::abs(rounded) >= 1.0) {
    m /= 10.0;
    ++e;
    rounded = std::round(m * 1000.0) / 1000.0;
  }
  std::snprintf(buf, sizeof buf, "%.3fE%+d", rounded, e);
  return buf;
}

std::string format_table(const ConvergenceTable& table) {
  std::ostringstream out;
  char buf[160];
  out << "case " << table.case_name << ", " << family_name(table.family)
      << " meshes, P" << table.k << "/P" << table.k << "/P" << table.k - 1
      << " (r1=" << table.r1 << ", r2=" << table.r2 << ")\n";
  std::snprintf(buf, sizeof buf, "%5s %12s %6s %12s %6s %12s %6s\n", "level",
                "|Q0u-u0|", "order", "|grad_w d|", "order", "|E_w d|", "order");
  out << buf;
  for (const ConvergenceRow& row : table.rows) {
    auto ord = [](const std::optional<double>& o) {
      if (!o) return std::string("   -");
      char b[16];
      std::snprintf(b, sizeof b, "%4.1f", *o);
      return std::string(b);
    };
    std::snprintf(buf, sizeof buf, "%5d %12s %6s %12s %6s %12s %6s\n", row.level,
                  format_sci3(row.e_l2).c_str(), ord(row.order_l2).c_str(),
                  format_sci3(row.e_grad).c_str(), ord(row.order_grad).c_str(),
                  format_sci3(row.e_ell).c_str(), ord(row.order_ell).c_str());
    out << buf;
  }
  return out.str();
}

std::string format_csv(const ConvergenceTable& table) {
  std::ostringstream out;
  out << "level,n_elements,h,e_l2,order_l2,e_grad,order_grad,e_ell,order_ell\n";
  char buf[48];
  auto num = [&buf](double x) {
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::string(buf);
  };
  auto ord = [&num](const std::optional<double>& o) {
    return o ? num(*o) : std::string();
  };
  for (const ConvergenceRow& row : table.rows) {
    out << row.level << "," << row.n_elements << "," << num(row.h) << ","
        << num(row.e_l2) << "," << ord(row.order_l2) << "," << num(row.e_grad) << ","
        << ord(row.order_grad) << "," << num(row.e_ell) << "," << ord(row.order_ell)
        << "\n";
  }
  return out.str();
}

} // namespace wg
