#include "wg/basis.hpp"

#include <cmath>

namespace wg {

std::vector<std::pair<int, int>> monomial_exponents(int d) {
  std::vector<std::pair<int, int>> exps;
  exps.reserve(poly_space_dim(d));
  for (int t = 0; t <= d; ++t)
    for (int b = 0; b <= t; ++b) exps.emplace_back(t - b, b);
  return exps;
}

Eigen::MatrixXd scaled_monomial_values(const Vec2& center, double scale, int d,
                                       const Eigen::Matrix2Xd& points, int dx, int dy) {
  const auto exps = monomial_exponents(d);
  const Eigen::Index npts = points.cols();
  const int n = static_cast<int>(exps.size());

  // powers of the scaled coordinates per point
  Eigen::MatrixXd sx(d + 1, npts), sy(d + 1, npts);
  sx.row(0).setOnes();
  sy.row(0).setOnes();
  for (Eigen::Index q = 0; q < npts; ++q) {
    const double s = (points(0, q) - center.x()) / scale;
    const double t = (points(1, q) - center.y()) / scale;
    for (int p = 1; p <= d; ++p) {
      sx(p, q) = sx(p - 1, q) * s;
      sy(p, q) = sy(p - 1, q) * t;
    }
  }

  const double deriv_scale = std::pow(scale, -(dx + dy));
  Eigen::MatrixXd vals(n, npts);
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = exps[i];
    if (a < dx || b < dy) {
      vals.row(i).setZero();
      continue;
    }
    double fall = deriv_scale;
    for (int j = 0; j < dx; ++j) fall *= a - j;
    for (int j = 0; j < dy; ++j) fall *= b - j;
    vals.row(i) = fall * (sx.row(a - dx).array() * sy.row(b - dy).array()).matrix();
  }
  return vals;
}

OrthoBasis::OrthoBasis(const Vec2& center, double scale, int degree, const QuadRule& rule)
    : center_(center), scale_(scale), degree_(degree) {
  const int n = poly_space_dim(degree);
  Eigen::MatrixXd vals = scaled_monomial_values(center, scale, degree, rule.points);
  coeff_ = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd& w = rule.weights;

  for (int i = 0; i < n; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        const double d = (vals.row(i).array() * vals.row(j).array() * w.transpose().array()).sum();
        vals.row(i) -= d * vals.row(j);
        coeff_.row(i) -= d * coeff_.row(j);
      }
    }
    const double nrm =
        std::sqrt((vals.row(i).array().square() * w.transpose().array()).sum());
    vals.row(i) /= nrm;
    coeff_.row(i) /= nrm;
  }
}

Eigen::MatrixXd OrthoBasis::eval(const Eigen::Matrix2Xd& points, int dx, int dy,
                                 int n) const {
  if (n < 0) n = size();
  const Eigen::MatrixXd mono = scaled_monomial_values(center_, scale_, degree_, points, dx, dy);
  return coeff_.topRows(n) * mono;
}

Eigen::MatrixXd edge_basis_values(int n, const Eigen::VectorXd& t, double length) {
  const Eigen::Index npts = t.size();
  Eigen::MatrixXd vals(n, npts);
  for (Eigen::Index q = 0; q < npts; ++q) {
    double p0 = 1.0, p1 = 0.0;
    for (int i = 0; i < n; ++i) {
      if (i == 1) {
        p1 = p0;
        p0 = t[q];
      } else if (i > 1) {
        const double p2 = ((2.0 * i - 1.0) * t[q] * p0 - (i - 1.0) * p1) / i;
        p1 = p0;
        p0 = p2;
      }
      vals(i, q) = std::sqrt((2.0 * i + 1.0) / length) * p0;
    }
  }
  return vals;
}

} // namespace wg
