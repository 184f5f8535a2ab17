#ifndef WG_POLY_HPP
#define WG_POLY_HPP

#include <array>
#include <string>
#include <vector>

namespace wg {

enum class Axis { X, Y };

/// Symmetric 2x2 coefficient matrix [[a, b], [b, c]] of the elliptic operator.
struct KappaMatrix {
  double a = 1.0;
  double b = 0.0;
  double c = 1.0;

  bool spd() const { return a > 0.0 && a * c - b * b > 0.0; }
};

/// Dense bivariate polynomial with real coefficients, stored in graded
/// (total-degree) order. The zero polynomial has degree -1 and empty support.
class Poly2 {
public:
  Poly2() = default;

  static Poly2 constant(double c);
  static Poly2 monomial(int a, int b, double coeff = 1.0);
  /// Parses "a,b,coeff;a,b,coeff;..." (repeated exponent pairs accumulate).
  static Poly2 parse(const std::string& text);

  int degree() const { return deg_; }
  bool zero() const { return deg_ < 0; }

  double coeff(int a, int b) const;
  void add_term(int a, int b, double coeff);

  Poly2 diff(Axis axis) const;
  double operator()(double x, double y) const;

  Poly2 operator+(const Poly2& q) const;
  Poly2 operator-(const Poly2& q) const;
  Poly2 operator*(const Poly2& q) const;
  Poly2 operator*(double s) const;
  friend Poly2 operator*(double s, const Poly2& p) { return p * s; }

  /// Terms with nonzero coefficients as (a, b, coeff) triples, graded order.
  std::vector<std::array<double, 3>> terms() const;

private:
  // coefficient of x^a y^b at index (a+b)(a+b+1)/2 + b
  std::vector<double> c_;
  int deg_ = -1;

  void resize_for_degree(int d);
  void trim();
};

/// E p = a p_xx + 2 b p_xy + c p_yy, the elliptic operator with constant kappa.
Poly2 elliptic_apply(const Poly2& p, const KappaMatrix& kappa);

/// Right-hand side f = (-E + mu)^2 u = E(Eu) - 2 mu Eu + mu^2 u.
Poly2 manufactured_rhs(const Poly2& u, const KappaMatrix& kappa, double mu);

} // namespace wg

#endif
