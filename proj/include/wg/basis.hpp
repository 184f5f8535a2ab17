#ifndef WG_BASIS_HPP
#define WG_BASIS_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "wg/quadrature.hpp"

namespace wg {

/// dim P_d in two variables; 0 for d < 0.
inline int poly_space_dim(int d) { return d < 0 ? 0 : (d + 1) * (d + 2) / 2; }

/// Exponent pairs (a, b) of the bivariate monomials up to total degree d, in
/// graded order matching Poly2 storage.
std::vector<std::pair<int, int>> monomial_exponents(int d);

/// L2(T)-orthonormal basis of P_degree(T) expressed in the scaled monomials
/// ((x - c_x)/h)^a ((y - c_y)/h)^b. Orthonormalization is modified
/// Gram-Schmidt under the supplied cell rule, run twice. Because the
/// monomials are in graded order, the first poly_space_dim(r) functions span
/// P_r(T) for every r <= degree.
class OrthoBasis {
public:
  OrthoBasis(const Vec2& center, double scale, int degree, const QuadRule& rule);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(coeff_.rows()); }
  const Vec2& center() const { return center_; }
  double scale() const { return scale_; }
  const Eigen::MatrixXd& coeff() const { return coeff_; }

  /// Values of the (dx, dy)-th derivative of the first n basis functions at
  /// the given physical points, as an n x npts matrix. n = -1 means all.
  Eigen::MatrixXd eval(const Eigen::Matrix2Xd& points, int dx = 0, int dy = 0,
                       int n = -1) const;

private:
  Vec2 center_;
  double scale_;
  int degree_;
  Eigen::MatrixXd coeff_; // row i: scaled-monomial coefficients of basis function i
};

/// Values of the (dx, dy) derivatives of all scaled monomials up to degree d
/// at the given points (rows: graded monomial index).
Eigen::MatrixXd scaled_monomial_values(const Vec2& center, double scale, int d,
                                       const Eigen::Matrix2Xd& points, int dx = 0,
                                       int dy = 0);

/// Orthonormal Legendre basis on an edge of the given length with respect to
/// the arclength measure; values of the first n functions at chordal
/// parameters t in [-1, 1].
Eigen::MatrixXd edge_basis_values(int n, const Eigen::VectorXd& t, double length);

} // namespace wg

#endif
