#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wg/errors.hpp"
#include "wg/study.hpp"

namespace {

struct Options {
  std::string family = "tri";
  int level = 1;
  std::string levels; // "A:B"
  int k = 2;
  std::string kappa;  // "a b c"
  double mu = 1.0;
  std::string case_name = "s1";
  std::string u_poly;
  int r1 = -1;
  int r2 = -1;
  std::string solver = "direct";
  bool condense = false;
  std::string out;
  std::string format = "table";
  unsigned threads = 0;
  std::string dump_system;
};

std::pair<int, int> parse_levels(const Options& opt) {
  if (opt.levels.empty()) return {opt.level, opt.level};
  int lo = 0, hi = 0;
  char colon = 0;
  std::istringstream ss(opt.levels);
  ss >> lo >> colon >> hi;
  if (ss.fail() || colon != ':' || lo > hi)
    throw wg::ConfigError("bad --levels '" + opt.levels + "' (expected A:B with A <= B)");
  return {lo, hi};
}

wg::ModelCase resolve_case(const Options& opt) {
  wg::KappaMatrix kappa{1.0, 0.0, 1.0};
  bool kappa_given = !opt.kappa.empty();
  if (kappa_given) {
    std::istringstream ss(opt.kappa);
    ss >> kappa.a >> kappa.b >> kappa.c;
    if (ss.fail()) throw wg::ConfigError("bad --kappa (expected \"a b c\")");
    if (!kappa.spd())
      throw wg::ConfigError("--kappa is not symmetric positive definite (need a > 0, ac - b^2 > 0)");
  }

  if (opt.case_name == "s1" || opt.case_name == "s2") {
    wg::ModelCase base = opt.case_name == "s1" ? wg::ModelCase::s1() : wg::ModelCase::s2();
    if (!kappa_given && opt.mu == 1.0) return base;
    return wg::ModelCase::custom(opt.case_name, base.u, kappa_given ? kappa : base.kappa,
                                 opt.mu);
  }
  if (opt.case_name == "custom") {
    if (opt.u_poly.empty())
      throw wg::ConfigError("--case custom requires --u \"a,b,coeff;...\"");
    return wg::ModelCase::custom("custom", wg::Poly2::parse(opt.u_poly), kappa, opt.mu);
  }
  throw wg::ConfigError("unknown case '" + opt.case_name + "' (expected s1, s2, or custom)");
}

wg::StudyConfig study_config(const Options& opt) {
  if (opt.k < 2 || opt.k > 6) throw wg::ConfigError("--k must be in [2, 6]");
  wg::StudyConfig cfg;
  if (opt.r1 >= 0) cfg.r1 = opt.r1;
  if (opt.r2 >= 0) cfg.r2 = opt.r2;
  cfg.solver = wg::parse_solver(opt.solver);
  cfg.condense = opt.condense;
  cfg.threads = opt.threads;
  return cfg;
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw wg::ConfigError("cannot write to '" + path + "'");
  out << text;
}

int cmd_mesh(const Options& opt) {
  const wg::MeshFamily family = wg::parse_family(opt.family);
  const wg::PolytopalMesh mesh = family == wg::MeshFamily::triangular
                                     ? wg::gen_triangular(opt.level)
                                     : wg::gen_pentagonal(opt.level);
  std::printf("V=%zu E=%zu F=%zu\n", mesh.vertices.size(), mesh.edges.size(),
              mesh.elements.size());
  if (!opt.out.empty()) {
    std::ofstream out(opt.out);
    if (!out) throw wg::ConfigError("cannot write to '" + opt.out + "'");
    wg::save_mesh(mesh, out);
  }
  return 0;
}

int cmd_solve(const Options& opt) {
  const wg::MeshFamily family = wg::parse_family(opt.family);
  const wg::ModelCase mcase = resolve_case(opt);
  const wg::StudyConfig cfg = study_config(opt);
  const wg::SolveReport report =
      wg::solve_case(mcase, family, opt.level, opt.k, cfg, opt.dump_system);

  std::ostringstream out;
  char buf[64];
  auto num = [&buf](double x) {
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return std::string(buf);
  };
  out << "command: solve\n"
      << "case: " << mcase.name << "\n"
      << "family: " << wg::family_name(family) << "\n"
      << "level: " << report.level << "\n"
      << "k: " << report.k << "\n"
      << "r1: " << report.r1 << "\n"
      << "r2: " << report.r2 << "\n"
      << "solver: " << opt.solver << "\n"
      << "condense: " << (opt.condense ? "on" : "off") << "\n"
      << "elements: " << report.n_elements << "\n"
      << "edges: " << report.n_edges << "\n"
      << "dofs_total: " << report.total_dofs << "\n"
      << "dofs_free: " << report.free_dofs << "\n"
      << "dofs_boundary: " << report.boundary_dofs << "\n"
      << "h: " << num(report.h) << "\n"
      << "e_l2: " << num(report.e_l2) << "\n"
      << "e_grad: " << num(report.e_grad) << "\n"
      << "e_ell: " << num(report.e_ell) << "\n"
      << "time_tables_s: " << num(report.seconds_tables) << "\n"
      << "time_assemble_s: " << num(report.seconds_assemble) << "\n"
      << "time_solve_s: " << num(report.seconds_solve) << "\n";
  write_or_print(out.str(), opt.out);
  return 0;
}

int cmd_convergence(const Options& opt) {
  const wg::MeshFamily family = wg::parse_family(opt.family);
  const wg::ModelCase mcase = resolve_case(opt);
  const wg::StudyConfig cfg = study_config(opt);
  const auto [lo, hi] = parse_levels(opt);
  if (opt.format != "table" && opt.format != "csv")
    throw wg::ConfigError("--format must be table or csv");

  const wg::ConvergenceTable table = wg::run_convergence(mcase, family, opt.k, lo, hi, cfg);
  write_or_print(opt.format == "csv" ? wg::format_csv(table) : wg::format_table(table),
                 opt.out);
  return 0;
}

void add_common(CLI::App* cmd, Options& opt, bool with_model) {
  cmd->set_config("--config", "", "key=value configuration file (flags win)");
  cmd->add_option("--family", opt.family, "mesh family: tri or pent");
  cmd->add_option("--threads", opt.threads, "worker thread count (0 = all cores)");
  if (!with_model) return;
  cmd->add_option("--k", opt.k, "polynomial order of the weak space");
  cmd->add_option("--kappa", opt.kappa, "kappa entries \"a b c\" of [[a,b],[b,c]]");
  cmd->add_option("--mu", opt.mu, "reaction coefficient (>= 0)");
  cmd->add_option("--case", opt.case_name, "s1, s2, or custom");
  cmd->add_option("--u", opt.u_poly, "custom exact solution \"a,b,coeff;...\"");
  cmd->add_option("--r1", opt.r1, "elliptic lifting degree override (>= k)");
  cmd->add_option("--r2", opt.r2, "gradient lifting degree override (>= k-1)");
  cmd->add_option("--solver", opt.solver, "direct or cg");
  cmd->add_flag("--condense", opt.condense, "statically condense interior DOFs");
  cmd->add_option("--out", opt.out, "write output to this path instead of stdout");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"stabilizer-free weak Galerkin solver for fourth-order elliptic problems"};
  app.require_subcommand(1);

  Options opt;
  CLI::App* mesh = app.add_subcommand("mesh", "generate a mesh and print its V/E/F summary");
  add_common(mesh, opt, false);
  mesh->add_option("--level", opt.level, "refinement level");
  mesh->add_option("--out", opt.out, "write the mesh document to this path");

  CLI::App* solve = app.add_subcommand("solve", "run a single solve and print a report");
  add_common(solve, opt, true);
  solve->add_option("--level", opt.level, "refinement level");
  solve->add_option("--dump-system", opt.dump_system,
                    "write the assembled matrix and right-hand side to this path");

  CLI::App* conv = app.add_subcommand("convergence", "run a refinement study");
  add_common(conv, opt, true);
  conv->add_option("--levels", opt.levels, "level range A:B");
  conv->add_option("--level", opt.level, "single level (alternative to --levels)");
  conv->add_option("--format", opt.format, "table or csv");

  try {
    app.parse(argc, argv);
    if (mesh->parsed()) return cmd_mesh(opt);
    if (solve->parsed()) return cmd_solve(opt);
    return cmd_convergence(opt);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const wg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const wg::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return 3;
  } catch (const wg::MeshError& e) {
    std::cerr << "mesh error: " << e.what() << "\n";
    return 4;
  }
}
