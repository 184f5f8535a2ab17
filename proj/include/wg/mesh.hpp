#ifndef WG_MESH_HPP
#define WG_MESH_HPP

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace wg {

using Vec2 = Eigen::Vector2d;

enum class MeshFamily { triangular, pentagonal };

MeshFamily parse_family(const std::string& name);
std::string family_name(MeshFamily family);

/// Straight edge between two mesh vertices. The stored unit normal is the
/// tangent (v0 -> v1) rotated by -90 degrees; on boundary edges the endpoint
/// order is chosen so that this normal points out of the domain, on interior
/// edges endpoints are stored low index first.
struct Edge {
  int v0 = -1;
  int v1 = -1;
  Vec2 normal = Vec2::Zero();
  double length = 0.0;
  bool boundary = false;
  std::array<int, 2> elems = {-1, -1}; // adjacent elements, elems[1] = -1 on boundary
};

/// Simple polygon with a counterclockwise vertex loop. Local edge i connects
/// loop vertices i and i+1; sigma[i] = +1 iff the global edge normal is
/// outward for this element.
struct Element {
  std::vector<int> verts;
  std::vector<int> edges;
  std::vector<int> sigma;
  Vec2 centroid = Vec2::Zero();
  double area = 0.0;
  double diameter = 0.0; // max pairwise vertex distance
  bool convex = true;

  int n_edges() const { return static_cast<int>(verts.size()); }
};

struct PolytopalMesh {
  std::vector<Vec2> vertices;
  std::vector<Edge> edges;
  std::vector<Element> elements;
  int level = 0;
  bool all_convex = true;

  int n_boundary_edges() const;
  std::vector<Vec2> element_loop(int t) const;

  /// Builds edge topology, orientation signs, and element geometry from
  /// vertex coordinates and CCW element loops.
  static PolytopalMesh from_cells(std::vector<Vec2> vertices,
                                  std::vector<std::vector<int>> loops, int level);

  /// Recomputes all derived data (normals, lengths, sigma, areas) from the
  /// current vertices, edge endpoints, and loops.
  void rebuild_derived();
};

/// Uniform triangular grids of Figure-1 type: n x n squares (n = 2^(level-1)),
/// each cut by the bottom-left to top-right diagonal.
PolytopalMesh gen_triangular(int level);

/// Non-convex pentagonal grids of Figure-2 type: each square cell split by the
/// zigzag (0,0) -> (5/6,1/3) -> (1/6,2/3) -> (1,1) in cell coordinates.
PolytopalMesh gen_pentagonal(int level);

struct MeshViolation {
  std::string entity; // "mesh", "edge", "element"
  int index = -1;
  std::string rule;
};

/// Checks every structural invariant; an empty result means the mesh is valid.
std::vector<MeshViolation> validate(const PolytopalMesh& mesh);

/// Versioned plain-text mesh document (floats at 17 significant digits).
void save_mesh(const PolytopalMesh& mesh, std::ostream& out);
PolytopalMesh load_mesh(std::istream& in);

} // namespace wg

#endif
