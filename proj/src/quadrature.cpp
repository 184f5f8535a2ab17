#include "wg/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "wg/errors.hpp"

namespace wg {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool point_in_triangle(const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
  const double d1 = cross2(b - a, p - a);
  const double d2 = cross2(c - b, p - b);
  const double d3 = cross2(a - c, p - c);
  return d1 > 0.0 && d2 > 0.0 && d3 > 0.0; // strictly inside a CCW triangle
}

} // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int npts) {
  Eigen::VectorXd x(npts), w(npts);
  const int m = (npts + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev-like initial guess
    double z = std::cos(std::numbers::pi * (i + 0.75) / (npts + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < npts; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = npts * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[npts - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[npts - 1 - i] = w[i];
  }
  if (npts % 2 == 1) x[m - 1] = 0.0;
  return {x, w};
}

QuadRule edge_rule(const Vec2& a, const Vec2& b, int d) {
  const int npts = std::max(1, (d + 2) / 2); // ceil((d+1)/2)
  auto [t, w] = gauss_legendre(npts);
  const double len = (b - a).norm();
  QuadRule rule;
  rule.exactness = d;
  rule.edge_param = t;
  rule.weights = w * (0.5 * len);
  rule.points.resize(2, npts);
  for (int q = 0; q < npts; ++q)
    rule.points.col(q) = a + 0.5 * (t[q] + 1.0) * (b - a);
  return rule;
}

QuadRule triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int d) {
  const double area2 = cross2(b - a, c - a);
  if (area2 <= 0.0) throw MeshError("triangle_rule: degenerate or misoriented triangle");
  // Duffy map (u,v) in [0,1]^2 -> a + u((1-v)(b-a) + v(c-a)), Jacobian = u * area2.
  // A degree-d integrand becomes degree d+1 in u and d in v.
  const int npts = (d + 3) / 2; // ceil((d+2)/2)
  auto [x, w] = gauss_legendre(npts);
  QuadRule rule;
  rule.exactness = d;
  rule.points.resize(2, npts * npts);
  rule.weights.resize(npts * npts);
  int q = 0;
  for (int i = 0; i < npts; ++i) {
    const double u = 0.5 * (x[i] + 1.0);
    const double wu = 0.5 * w[i];
    for (int j = 0; j < npts; ++j, ++q) {
      const double v = 0.5 * (x[j] + 1.0);
      const double wv = 0.5 * w[j];
      rule.points.col(q) = a + u * ((1.0 - v) * (b - a) + v * (c - a));
      rule.weights[q] = wu * wv * u * area2;
    }
  }
  return rule;
}

std::vector<std::array<int, 3>> ear_clip(std::span<const Vec2> loop) {
  const int n = static_cast<int>(loop.size());
  if (n < 3) throw MeshError("ear_clip: polygon needs at least 3 vertices");
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) scale = std::max(scale, (loop[i] - loop[j]).squaredNorm());
  const double tol = 1e-14 * scale;

  std::vector<int> alive(n);
  for (int i = 0; i < n; ++i) alive[i] = i;
  std::vector<std::array<int, 3>> tris;
  tris.reserve(n - 2);

  while (alive.size() > 3) {
    int pick = -1;
    for (std::size_t s = 0; s < alive.size(); ++s) {
      const int ip = alive[(s + alive.size() - 1) % alive.size()];
      const int iv = alive[s];
      const int in = alive[(s + 1) % alive.size()];
      if (cross2(loop[iv] - loop[ip], loop[in] - loop[iv]) <= tol) continue; // reflex or flat
      bool blocked = false;
      for (int other : alive) {
        if (other == ip || other == iv || other == in) continue;
        if (point_in_triangle(loop[other], loop[ip], loop[iv], loop[in])) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      if (pick == -1 || iv < alive[pick]) pick = static_cast<int>(s);
    }
    if (pick == -1) throw MeshError("ear_clip: no ear found (self-intersecting polygon?)");
    const std::size_t s = static_cast<std::size_t>(pick);
    tris.push_back({alive[(s + alive.size() - 1) % alive.size()], alive[s],
                    alive[(s + 1) % alive.size()]});
    alive.erase(alive.begin() + pick);
  }
  tris.push_back({alive[0], alive[1], alive[2]});
  return tris;
}

QuadRule polygon_rule(std::span<const Vec2> loop, int d) {
  const auto tris = ear_clip(loop);
  QuadRule rule;
  rule.exactness = d;
  Eigen::Index total = 0;
  std::vector<QuadRule> parts;
  parts.reserve(tris.size());
  for (const auto& t : tris) {
    parts.push_back(triangle_rule(loop[t[0]], loop[t[1]], loop[t[2]], d));
    total += parts.back().size();
  }
  rule.points.resize(2, total);
  rule.weights.resize(total);
  Eigen::Index at = 0;
  for (const auto& part : parts) {
    rule.points.middleCols(at, part.size()) = part.points;
    rule.weights.segment(at, part.size()) = part.weights;
    at += part.size();
  }
  return rule;
}

QuadRule cell_rule(const PolytopalMesh& mesh, int element, int d) {
  const auto loop = mesh.element_loop(element);
  return polygon_rule(loop, d);
}

QuadRule edge_rule(const PolytopalMesh& mesh, int edge, int d) {
  const Edge& e = mesh.edges[edge];
  return edge_rule(mesh.vertices[e.v0], mesh.vertices[e.v1], d);
}

} // namespace wg
