#ifndef WG_QUADRATURE_HPP
#define WG_QUADRATURE_HPP

#include <Eigen/Dense>
#include <array>
#include <span>
#include <vector>

#include "wg/mesh.hpp"

namespace wg {

/// Positive-weight rule with a declared polynomial exactness degree. For edge
/// rules, edge_param holds the chordal parameter t in [-1,1] per point.
struct QuadRule {
  Eigen::Matrix2Xd points;
  Eigen::VectorXd weights;
  int exactness = 0;
  Eigen::VectorXd edge_param;

  Eigen::Index size() const { return weights.size(); }
};

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int npts);

/// Rule on the segment a -> b, exact for polynomial traces of degree <= d.
QuadRule edge_rule(const Vec2& a, const Vec2& b, int d);

/// Tensor Gauss rule under the Duffy map, exact to degree d on the triangle.
QuadRule triangle_rule(const Vec2& a, const Vec2& b, const Vec2& c, int d);

/// Ear-clipping triangulation of a simple CCW polygon; ears are picked by
/// smallest vertex index so the result is deterministic.
std::vector<std::array<int, 3>> ear_clip(std::span<const Vec2> loop);

/// Rule on a simple (possibly non-convex) CCW polygon, exact to degree d.
QuadRule polygon_rule(std::span<const Vec2> loop, int d);

/// Convenience wrappers bound to mesh entities.
QuadRule cell_rule(const PolytopalMesh& mesh, int element, int d);
QuadRule edge_rule(const PolytopalMesh& mesh, int edge, int d);

} // namespace wg

#endif
