#include "wg/model.hpp"

namespace wg {

ModelProblem manufactured_problem(const Poly2& u, const KappaMatrix& kappa, double mu) {
  ModelProblem model;
  model.kappa = {kappa};
  model.mu = {mu};
  model.f = manufactured_rhs(u, kappa, mu);
  const Poly2 ux = u.diff(Axis::X);
  const Poly2 uy = u.diff(Axis::Y);
  model.dirichlet = [u](const Vec2& x) { return u(x.x(), x.y()); };
  model.neumann = [ux, uy, kappa](const Vec2& x, const Vec2& n) {
    const double gx = ux(x.x(), x.y());
    const double gy = uy(x.x(), x.y());
    return (kappa.a * gx + kappa.b * gy) * n.x() + (kappa.b * gx + kappa.c * gy) * n.y();
  };
  return model;
}

} // namespace wg
