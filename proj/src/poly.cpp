#include "wg/poly.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>

#include "wg/errors.hpp"

namespace wg {

namespace {

inline std::size_t dim_upto(int d) {
  return static_cast<std::size_t>((d + 1) * (d + 2) / 2);
}

inline std::size_t index_of(int a, int b) {
  const int t = a + b;
  return static_cast<std::size_t>(t * (t + 1) / 2 + b);
}

} // namespace

Poly2 Poly2::constant(double c) { return monomial(0, 0, c); }

Poly2 Poly2::monomial(int a, int b, double coeff) {
  Poly2 p;
  p.add_term(a, b, coeff);
  return p;
}

Poly2 Poly2::parse(const std::string& text) {
  Poly2 p;
  std::stringstream ss(text);
  std::string term;
  while (std::getline(ss, term, ';')) {
    if (term.find_first_not_of(" \t") == std::string::npos) continue;
    std::stringstream ts(term);
    int a = 0, b = 0;
    double coeff = 0.0;
    char comma1 = 0, comma2 = 0;
    ts >> a >> comma1 >> b >> comma2 >> coeff;
    if (ts.fail() || comma1 != ',' || comma2 != ',' || a < 0 || b < 0)
      throw ConfigError("bad polynomial term '" + term + "' (expected a,b,coeff)");
    p.add_term(a, b, coeff);
  }
  return p;
}

double Poly2::coeff(int a, int b) const {
  if (a < 0 || b < 0 || a + b > deg_) return 0.0;
  return c_[index_of(a, b)];
}

void Poly2::add_term(int a, int b, double coeff) {
  if (coeff == 0.0) return;
  if (a + b > deg_) resize_for_degree(a + b);
  c_[index_of(a, b)] += coeff;
  trim();
}

void Poly2::resize_for_degree(int d) {
  c_.resize(dim_upto(d), 0.0);
  deg_ = d;
}

void Poly2::trim() {
  while (deg_ >= 0) {
    bool any = false;
    for (int b = 0; b <= deg_ && !any; ++b)
      any = c_[index_of(deg_ - b, b)] != 0.0;
    if (any) break;
    --deg_;
  }
  c_.resize(deg_ < 0 ? 0 : dim_upto(deg_));
}

Poly2 Poly2::diff(Axis axis) const {
  Poly2 d;
  if (deg_ <= 0) return d;
  d.resize_for_degree(deg_ - 1);
  for (int t = 1; t <= deg_; ++t) {
    for (int b = 0; b <= t; ++b) {
      const double c = c_[index_of(t - b, b)];
      if (c == 0.0) continue;
      const int a = t - b;
      if (axis == Axis::X && a > 0)
        d.c_[index_of(a - 1, b)] += a * c;
      else if (axis == Axis::Y && b > 0)
        d.c_[index_of(a, b - 1)] += b * c;
    }
  }
  d.trim();
  return d;
}

double Poly2::operator()(double x, double y) const {
  double v = 0.0;
  for (int t = deg_; t >= 0; --t) {
    for (int b = 0; b <= t; ++b) {
      const double c = c_[index_of(t - b, b)];
      if (c == 0.0) continue;
      v += c * std::pow(x, t - b) * std::pow(y, b);
    }
  }
  return v;
}

Poly2 Poly2::operator+(const Poly2& q) const {
  Poly2 r = *this;
  if (q.deg_ > r.deg_) r.resize_for_degree(q.deg_);
  for (std::size_t i = 0; i < q.c_.size(); ++i) r.c_[i] += q.c_[i];
  r.trim();
  return r;
}

Poly2 Poly2::operator-(const Poly2& q) const { return *this + q * (-1.0); }

Poly2 Poly2::operator*(const Poly2& q) const {
  Poly2 r;
  if (zero() || q.zero()) return r;
  r.resize_for_degree(deg_ + q.deg_);
  for (int t1 = 0; t1 <= deg_; ++t1)
    for (int b1 = 0; b1 <= t1; ++b1) {
      const double c1 = c_[index_of(t1 - b1, b1)];
      if (c1 == 0.0) continue;
      for (int t2 = 0; t2 <= q.deg_; ++t2)
        for (int b2 = 0; b2 <= t2; ++b2) {
          const double c2 = q.c_[index_of(t2 - b2, b2)];
          if (c2 == 0.0) continue;
          r.c_[index_of(t1 - b1 + t2 - b2, b1 + b2)] += c1 * c2;
        }
    }
  r.trim();
  return r;
}

Poly2 Poly2::operator*(double s) const {
  Poly2 r = *this;
  for (double& c : r.c_) c *= s;
  r.trim();
  return r;
}

std::vector<std::array<double, 3>> Poly2::terms() const {
  std::vector<std::array<double, 3>> out;
  for (int t = 0; t <= deg_; ++t)
    for (int b = 0; b <= t; ++b) {
      const double c = c_[index_of(t - b, b)];
      if (c != 0.0) out.push_back({double(t - b), double(b), c});
    }
  return out;
}

Poly2 elliptic_apply(const Poly2& p, const KappaMatrix& kappa) {
  const Poly2 px = p.diff(Axis::X);
  const Poly2 py = p.diff(Axis::Y);
  return px.diff(Axis::X) * kappa.a + px.diff(Axis::Y) * (2.0 * kappa.b) +
         py.diff(Axis::Y) * kappa.c;
}

Poly2 manufactured_rhs(const Poly2& u, const KappaMatrix& kappa, double mu) {
  const Poly2 eu = elliptic_apply(u, kappa);
  return elliptic_apply(eu, kappa) - eu * (2.0 * mu) + u * (mu * mu);
}

} // namespace wg
