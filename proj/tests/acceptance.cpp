// Acceptance suite: drives the full library through every published
// experiment configuration and prints one PASS/FAIL line per criterion.
// Criterion 2 (error magnitudes) is advisory and warns instead of failing
// when the convergence orders of criterion 1 hold.
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wg/study.hpp"

using namespace wg;

namespace {

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  bool warn_only = false;
  std::string detail;

  void fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

struct Block {
  std::string case_name;
  MeshFamily family;
  int k;
  int lo, hi;
};

struct LevelData {
  int level;
  std::array<double, 3> errors; // e_l2, e_grad, e_ell
};

struct BlockData {
  Block block;
  std::vector<LevelData> levels;
  ConvergenceTable table;
};

ModelCase case_by_name(const std::string& name) {
  return name == "s1" ? ModelCase::s1() : ModelCase::s2();
}

const char* fam(MeshFamily f) { return f == MeshFamily::triangular ? "tri" : "pent"; }

// finest-level reference values from the published tables: e_l2, e_grad, e_ell
const std::map<std::string, std::array<double, 3>> kPaperFinest = {
    {"s1/tri/2", {1.28e-5, 1.37e-4, 6.29e-2}},  {"s1/tri/3", {1.84e-7, 9.82e-6, 5.61e-3}},
    {"s1/tri/4", {3.51e-8, 5.28e-6, 1.74e-3}},  {"s2/tri/2", {2.36e-5, 2.26e-4, 8.30e-2}},
    {"s2/tri/3", {3.13e-7, 1.06e-5, 7.16e-3}},  {"s2/tri/4", {4.82e-8, 5.78e-6, 2.23e-3}},
    {"s1/pent/2", {1.02e-5, 1.09e-4, 5.13e-2}}, {"s1/pent/3", {1.07e-7, 1.38e-5, 4.00e-3}},
    {"s1/pent/4", {1.45e-8, 7.92e-6, 1.18e-3}}, {"s2/pent/2", {1.78e-5, 1.72e-4, 7.43e-2}},
    {"s2/pent/3", {1.48e-7, 1.97e-5, 5.37e-3}}, {"s2/pent/4", {2.01e-8, 9.19e-6, 1.52e-3}},
};

// Runs one block level by level, checking matrix symmetry and Cholesky
// success along the way (criterion 5 evidence).
BlockData run_block(const Block& block, unsigned threads, Criterion* wellposed) {
  const ModelCase mcase = case_by_name(block.case_name);
  BlockData data;
  data.block = block;
  data.table.case_name = block.case_name;
  data.table.family = block.family;
  data.table.k = block.k;

  for (int level = block.lo; level <= block.hi; ++level) {
    const PolytopalMesh mesh = block.family == MeshFamily::triangular
                                   ? gen_triangular(level)
                                   : gen_pentagonal(level);
    const LocalDofLayout layout(block.k);
    const ModelProblem model = mcase.problem();
    const auto tables =
        build_all_liftings(mesh, layout, model, mcase.data_degree(), {}, {}, threads);
    const DofMap dofs = build_dofmap(mesh, layout);
    const WeakField bc =
        apply_boundary(WeakField::zero(dofs), model, mesh, layout, dofs, tables);
    AssembleOptions opts;
    opts.threads = threads;
    const AssembledSystem sys = assemble(mesh, model, layout, tables, dofs, bc, opts);

    if (wellposed) {
      const Eigen::SparseMatrix<double> at = sys.matrix.transpose();
      const double asym =
          (Eigen::MatrixXd(sys.matrix) - Eigen::MatrixXd(at)).cwiseAbs().maxCoeff();
      const double scale = Eigen::MatrixXd(sys.matrix).cwiseAbs().maxCoeff();
      if (asym > 1e-12 * scale)
        wellposed->fail(block.case_name + "/" + fam(block.family) + "/k" +
                        std::to_string(block.k) + " G" + std::to_string(level) +
                        ": asymmetry " + std::to_string(asym / scale));
      Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(sys.matrix);
      if (llt.info() != Eigen::Success)
        wellposed->fail(block.case_name + "/" + fam(block.family) + "/k" +
                        std::to_string(block.k) + " G" + std::to_string(level) +
                        ": Cholesky failed");
    }

    const WeakField u_h = solve(sys, dofs, SolverKind::direct);
    const auto errs = error_norms(u_h, mcase, mesh, layout, dofs, tables);
    data.levels.push_back({level, errs});

    ConvergenceRow row;
    row.level = level;
    row.n_elements = static_cast<Eigen::Index>(mesh.elements.size());
    row.h = 0.0;
    for (const Element& el : mesh.elements) row.h = std::max(row.h, el.diameter);
    row.e_l2 = errs[0];
    row.e_grad = errs[1];
    row.e_ell = errs[2];
    if (!data.table.rows.empty()) {
      const auto& prev = data.table.rows.back();
      row.order_l2 = std::log2(prev.e_l2 / row.e_l2);
      row.order_grad = std::log2(prev.e_grad / row.e_grad);
      row.order_ell = std::log2(prev.e_ell / row.e_ell);
    }
    data.table.rows.push_back(row);
    data.table.r1 = tables[0].r1;
    data.table.r2 = tables[0].r2;
  }
  return data;
}

std::string block_tag(const Block& b) {
  return b.case_name + "/" + fam(b.family) + "/k" + std::to_string(b.k);
}

char buf[256];

} // namespace

int main() {
  std::vector<Block> blocks;
  for (const char* case_name : {"s1", "s2"})
    for (MeshFamily family : {MeshFamily::triangular, MeshFamily::pentagonal})
      for (int k : {2, 3, 4}) {
        const int lo = k == 2 ? 4 : (k == 3 ? 3 : 2);
        blocks.push_back({case_name, family, k, lo, lo + 2});
      }

  Criterion c1{1, "convergence orders reproduce the published tables"};
  Criterion c2{2, "error magnitudes within 10x of the published values"};
  c2.warn_only = true;
  Criterion c3{3, "patch test: polynomial solutions reproduced to 1e-8"};
  Criterion c4{4, "commuting identities of the weak operator lifts"};
  Criterion c5{5, "well-posedness: symmetry, Cholesky, zero data"};
  Criterion c6{6, "norm equivalence ratio stable across levels"};
  Criterion c7{7, "quadrature exactness at declared degrees"};
  Criterion c8{8, "bitwise-identical tables across thread counts"};

  // ---- criteria 1, 2, 5, 8: the twelve published table blocks --------------
  std::vector<BlockData> results;
  std::vector<std::string> csv_default, csv_single;
  for (const Block& block : blocks) {
    BlockData data = run_block(block, 0, &c5);
    csv_default.push_back(format_csv(data.table));
    results.push_back(std::move(data));
  }
  for (const Block& block : blocks)
    csv_single.push_back(format_csv(run_block(block, 1, nullptr).table));

  for (const BlockData& data : results) {
    const auto& last = data.table.rows.back();
    const int k = data.block.k;
    const double ord_ell = *last.order_ell;
    const double ord_grad = *last.order_grad;
    const double ord_l2 = *last.order_l2;
    std::snprintf(buf, sizeof buf, "%-11s orders: l2 %.2f  grad %.2f  ell %.2f",
                  block_tag(data.block).c_str(), ord_l2, ord_grad, ord_ell);
    std::printf("  %s\n", buf);
    if (std::abs(ord_ell - (k - 1)) > 0.25)
      c1.fail(block_tag(data.block) + ": E_w order " + std::to_string(ord_ell));
    if (std::abs(ord_grad - k) > 0.35)
      c1.fail(block_tag(data.block) + ": grad_w order " + std::to_string(ord_grad));
    if (ord_l2 < k - 0.25)
      c1.fail(block_tag(data.block) + ": L2 order " + std::to_string(ord_l2));

    const auto& paper = kPaperFinest.at(block_tag(data.block));
    const std::array<double, 3> ours = data.levels.back().errors;
    for (int i = 0; i < 3; ++i) {
      const double ratio = ours[i] / paper[i];
      if (ratio > 10.0 || ratio < 0.1)
        c2.fail(block_tag(data.block) + ": error " + std::to_string(i) + " ratio " +
                std::to_string(ratio));
    }
  }

  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (csv_default[i] != csv_single[i]) c8.fail(block_tag(blocks[i]) + ": csv differs");

  // criterion 5: zero data yields the zero solution to machine precision
  for (MeshFamily family : {MeshFamily::triangular, MeshFamily::pentagonal}) {
    const ModelCase zero = ModelCase::custom("zero", Poly2(), {2.0, 0.0, 2.0}, 1.0);
    const SolveReport report = solve_case(zero, family, 2, 2, {});
    if (report.solution.coeffs.cwiseAbs().maxCoeff() > 1e-13)
      c5.fail(std::string(fam(family)) + ": zero data gave nonzero solution");
  }

  // ---- criterion 3: patch tests --------------------------------------------
  const Poly2 patch_u[] = {
      Poly2::monomial(2, 0) + Poly2::monomial(1, 1), // k = 2
      Poly2::monomial(2, 1),                         // k = 3
      Poly2::monomial(2, 2),                         // k = 4
  };
  for (MeshFamily family : {MeshFamily::triangular, MeshFamily::pentagonal}) {
    for (int k : {2, 3, 4}) {
      const ModelCase mcase =
          ModelCase::custom("patch", patch_u[k - 2], {2.0, -1.0, 2.0}, 1.0);
      const PolytopalMesh mesh =
          family == MeshFamily::triangular ? gen_triangular(2) : gen_pentagonal(2);
      const LocalDofLayout layout(k);
      const ModelProblem model = mcase.problem();
      const auto tables = build_all_liftings(mesh, layout, model, mcase.data_degree());
      const DofMap dofs = build_dofmap(mesh, layout);
      const WeakField bc =
          apply_boundary(WeakField::zero(dofs), model, mesh, layout, dofs, tables);
      const AssembledSystem sys = assemble(mesh, model, layout, tables, dofs, bc, {});
      const WeakField u_h = solve(sys, dofs, SolverKind::direct);
      const WeakField qhu = project_qh(mcase.u, mesh, layout, dofs, tables, model);
      const WeakField diff{qhu.coeffs - u_h.coeffs};
      const double err = energy_norm(diff, mesh, layout, dofs, tables, model);
      const double ref = energy_norm(qhu, mesh, layout, dofs, tables, model);
      if (err > 1e-8 * ref)
        c3.fail(std::string(fam(family)) + "/k" + std::to_string(k) + ": relative error " +
                std::to_string(err / ref));
    }
  }

  // ---- criterion 4: commuting identities -----------------------------------
  std::mt19937 rng(1234);
  for (MeshFamily family : {MeshFamily::triangular, MeshFamily::pentagonal}) {
    const PolytopalMesh mesh =
        family == MeshFamily::triangular ? gen_triangular(3) : gen_pentagonal(3);
    std::uniform_int_distribution<int> pick(0, int(mesh.elements.size()) - 1);
    std::vector<int> chosen;
    for (int i = 0; i < 10; ++i) chosen.push_back(pick(rng));
    for (int k : {2, 3, 4}) {
      const KappaMatrix kappa{2.0, -1.0, 2.0};
      const LocalDofLayout layout(k);
      ModelProblem model;
      model.kappa = {kappa};
      model.mu = {1.0};
      const auto tables = build_all_liftings(mesh, layout, model, k);
      const DofMap dofs = build_dofmap(mesh, layout);
      for (const auto& [a, b] : monomial_exponents(k)) {
        const Poly2 p = Poly2::monomial(a, b);
        const Poly2 ep = elliptic_apply(p, kappa);
        const Poly2 px = p.diff(Axis::X);
        const Poly2 py = p.diff(Axis::Y);
        const WeakField w = project_qh(p, mesh, layout, dofs, tables, model);
        for (int t : chosen) {
          const auto& tab = tables[t];
          const int n1 = poly_space_dim(tab.r1);
          const int n2 = poly_space_dim(tab.r2);
          const auto idx = dofs.element_dofs(mesh, t);
          Eigen::VectorXd local(Eigen::Index(idx.size()));
          for (Eigen::Index i = 0; i < local.size(); ++i) local[i] = w.coeffs[idx[i]];

          auto moments = [&](const Poly2& q, int n) {
            Eigen::VectorXd vals(tab.cell.size());
            for (Eigen::Index i = 0; i < vals.size(); ++i)
              vals[i] = q(tab.cell.points(0, i), tab.cell.points(1, i));
            return (tab.basis.eval(tab.cell.points, 0, 0, n) *
                    tab.cell.weights.cwiseProduct(vals))
                .eval();
          };
          const double scale = 1.0 + moments(p, layout.interior_dim).norm();
          if ((tab.lift_ell * local - moments(ep, n1)).norm() > 1e-9 * scale)
            c4.fail(std::string(fam(family)) + "/k" + std::to_string(k) + " elem " +
                    std::to_string(t) + ": E_w mismatch on x^" + std::to_string(a) + "y^" +
                    std::to_string(b));
          Eigen::VectorXd expected(2 * n2);
          expected.head(n2) = moments(px, n2);
          expected.tail(n2) = moments(py, n2);
          if ((tab.lift_grad * local - expected).norm() > 1e-9 * scale)
            c4.fail(std::string(fam(family)) + "/k" + std::to_string(k) + " elem " +
                    std::to_string(t) + ": grad_w mismatch on x^" + std::to_string(a) +
                    "y^" + std::to_string(b));
        }
      }
    }
  }

  // ---- criterion 6: norm equivalence observation ----------------------------
  {
    std::mt19937 gen(97);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (MeshFamily family : {MeshFamily::triangular, MeshFamily::pentagonal}) {
      std::vector<double> level_min, level_max;
      for (int level = 1; level <= 4; ++level) {
        const ModelCase mcase = ModelCase::s1();
        const PolytopalMesh mesh = family == MeshFamily::triangular
                                       ? gen_triangular(level)
                                       : gen_pentagonal(level);
        const LocalDofLayout layout(2);
        const ModelProblem model = mcase.problem();
        const auto tables = build_all_liftings(mesh, layout, model, mcase.data_degree());
        const DofMap dofs = build_dofmap(mesh, layout);
        double lo = 1e300, hi = 0.0;
        for (int rep = 0; rep < 50; ++rep) {
          WeakField v = WeakField::zero(dofs);
          for (Eigen::Index i = 0; i < v.coeffs.size(); ++i) v.coeffs[i] = unit(gen);
          const double num = energy_norm(v, mesh, layout, dofs, tables, model);
          const double den = discrete_h2_norm(v, mesh, layout, dofs, tables, model);
          if (!(den > 0.0) || !std::isfinite(num)) {
            c6.fail(std::string(fam(family)) + ": degenerate ratio at level " +
                    std::to_string(level));
            continue;
          }
          const double r = num / den;
          lo = std::min(lo, r);
          hi = std::max(hi, r);
        }
        level_min.push_back(lo);
        level_max.push_back(hi);
      }
      const double drift_up = *std::max_element(level_max.begin(), level_max.end()) /
                              *std::min_element(level_max.begin(), level_max.end());
      const double drift_dn = *std::max_element(level_min.begin(), level_min.end()) /
                              *std::min_element(level_min.begin(), level_min.end());
      std::snprintf(buf, sizeof buf,
                    "%s: ratio interval [%.3f, %.3f] at G1 -> [%.3f, %.3f] at G4",
                    fam(family), level_min.front(), level_max.front(), level_min.back(),
                    level_max.back());
      std::printf("  %s\n", buf);
      if (drift_up >= 10.0 || drift_dn >= 10.0)
        c6.fail(std::string(fam(family)) + ": interval endpoints drift " +
                std::to_string(drift_up) + " / " + std::to_string(drift_dn));
    }
  }

  // ---- criterion 7: quadrature exactness ------------------------------------
  {
    const int d_tri = 20;
    const QuadRule ref = triangle_rule(Vec2(0, 0), Vec2(1, 0), Vec2(0, 1), d_tri);
    for (int a = 0; a <= d_tri; ++a)
      for (int b = 0; a + b <= d_tri; ++b) {
        double got = 0.0;
        for (Eigen::Index q = 0; q < ref.size(); ++q)
          got += ref.weights[q] * std::pow(ref.points(0, q), a) *
                 std::pow(ref.points(1, q), b);
        const double exact = oracles::reference_simplex_moment(a, b);
        if (std::abs(got - exact) > 1e-13 * std::abs(exact))
          c7.fail("triangle x^" + std::to_string(a) + "y^" + std::to_string(b));
      }

    const PolytopalMesh pent = gen_pentagonal(1);
    const int d_pent = 16;
    for (int t = 0; t < 2; ++t) {
      const auto loop = pent.element_loop(t);
      const QuadRule rule = polygon_rule(loop, d_pent);
      for (int a = 0; a <= d_pent; ++a)
        for (int b = 0; a + b <= d_pent; ++b) {
          double got = 0.0;
          for (Eigen::Index q = 0; q < rule.size(); ++q)
            got += rule.weights[q] * std::pow(rule.points(0, q), a) *
                   std::pow(rule.points(1, q), b);
          const double exact = oracles::polygon_monomial_integral(loop, a, b);
          if (std::abs(got - exact) > 1e-13 * std::max(1e-8, std::abs(exact)))
            c7.fail("pentagon " + std::to_string(t) + " x^" + std::to_string(a) + "y^" +
                    std::to_string(b));
        }
    }
  }

  // ---- report ---------------------------------------------------------------
  int failures = 0;
  for (const Criterion* c : {&c1, &c2, &c3, &c4, &c5, &c6, &c7, &c8}) {
    const char* status = c->pass ? "PASS" : (c->warn_only && c1.pass ? "WARN" : "FAIL");
    std::printf("[%s] criterion %d: %s%s%s\n", status, c->id, c->name.c_str(),
                c->detail.empty() ? "" : " -- ", c->detail.c_str());
    if (std::string(status) == "FAIL") ++failures;
  }
  return failures;
}
