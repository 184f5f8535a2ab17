#ifndef WG_MODEL_HPP
#define WG_MODEL_HPP

#include <functional>
#include <vector>

#include "wg/mesh.hpp"
#include "wg/poly.hpp"

namespace wg {

/// Coefficients and data of (-div(kappa grad) + mu)^2 u = f with u = xi and
/// kappa grad u . n = nu on the boundary. kappa and mu are constant per
/// element; a single entry broadcasts to the whole mesh.
struct ModelProblem {
  std::vector<KappaMatrix> kappa = {KappaMatrix{}};
  std::vector<double> mu = {0.0};
  Poly2 f;
  std::function<double(const Vec2&)> dirichlet;             // xi
  std::function<double(const Vec2&, const Vec2&)> neumann;  // nu(x, n)

  const KappaMatrix& kappa_on(int t) const {
    return kappa.size() == 1 ? kappa[0] : kappa[static_cast<std::size_t>(t)];
  }
  double mu_on(int t) const {
    return mu.size() == 1 ? mu[0] : mu[static_cast<std::size_t>(t)];
  }
};

/// Builds the full problem data (f, xi, nu) for an exact polynomial solution.
ModelProblem manufactured_problem(const Poly2& u, const KappaMatrix& kappa, double mu);

} // namespace wg

#endif
