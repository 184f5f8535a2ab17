#include "wg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "wg/errors.hpp"

namespace wg {

namespace {

constexpr int kMinLevel = 1;
constexpr int kMaxLevel = 12;

void check_level(int level) {
  if (level < kMinLevel || level > kMaxLevel)
    throw ConfigError("mesh level " + std::to_string(level) + " out of range [" +
                      std::to_string(kMinLevel) + ", " + std::to_string(kMaxLevel) + "]");
}

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

double signed_area(const std::vector<Vec2>& loop) {
  double s = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    s += cross2(p, q);
  }
  return 0.5 * s;
}

Vec2 area_centroid(const std::vector<Vec2>& loop, double area) {
  Vec2 c = Vec2::Zero();
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    c += (p + q) * cross2(p, q);
  }
  return c / (6.0 * area);
}

} // namespace

MeshFamily parse_family(const std::string& name) {
  if (name == "tri") return MeshFamily::triangular;
  if (name == "pent") return MeshFamily::pentagonal;
  throw ConfigError("unknown mesh family '" + name + "' (expected tri or pent)");
}

std::string family_name(MeshFamily family) {
  return family == MeshFamily::triangular ? "tri" : "pent";
}

int PolytopalMesh::n_boundary_edges() const {
  int n = 0;
  for (const Edge& e : edges) n += e.boundary ? 1 : 0;
  return n;
}

std::vector<Vec2> PolytopalMesh::element_loop(int t) const {
  std::vector<Vec2> loop;
  loop.reserve(elements[t].verts.size());
  for (int v : elements[t].verts) loop.push_back(vertices[v]);
  return loop;
}

PolytopalMesh PolytopalMesh::from_cells(std::vector<Vec2> vertices,
                                        std::vector<std::vector<int>> loops, int level) {
  PolytopalMesh mesh;
  mesh.vertices = std::move(vertices);
  mesh.level = level;
  mesh.elements.resize(loops.size());

  std::map<std::pair<int, int>, int> edge_index;
  for (std::size_t t = 0; t < loops.size(); ++t) {
    Element& el = mesh.elements[t];
    el.verts = std::move(loops[t]);
    const int n = el.n_edges();
    el.edges.resize(n);
    for (int i = 0; i < n; ++i) {
      const int a = el.verts[i];
      const int b = el.verts[(i + 1) % n];
      const auto key = std::minmax(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        Edge e;
        e.v0 = a; // provisional: traversal order of the first element
        e.v1 = b;
        e.elems[0] = static_cast<int>(t);
        it = edge_index.emplace(key, static_cast<int>(mesh.edges.size())).first;
        mesh.edges.push_back(e);
      } else {
        Edge& e = mesh.edges[it->second];
        if (e.elems[1] != -1)
          throw MeshError("edge shared by more than two elements");
        e.elems[1] = static_cast<int>(t);
      }
      el.edges[i] = it->second;
    }
  }

  for (Edge& e : mesh.edges) {
    e.boundary = e.elems[1] == -1;
    // interior edges low index first; boundary edges keep the owning
    // element's traversal order so the -90-degree normal is outward
    if (!e.boundary && e.v0 > e.v1) std::swap(e.v0, e.v1);
  }

  mesh.rebuild_derived();
  return mesh;
}

void PolytopalMesh::rebuild_derived() {
  for (Edge& e : edges) {
    const Vec2 d = vertices[e.v1] - vertices[e.v0];
    e.length = d.norm();
    if (e.length <= 0.0) throw MeshError("degenerate edge");
    const Vec2 t = d / e.length;
    e.normal = Vec2(t.y(), -t.x());
  }
  all_convex = true;
  for (std::size_t t = 0; t < elements.size(); ++t) {
    Element& el = elements[t];
    const auto loop = element_loop(static_cast<int>(t));
    const int n = el.n_edges();
    el.area = signed_area(loop);
    if (el.area <= 0.0)
      throw MeshError("element " + std::to_string(t) + " has non-positive area");
    el.centroid = area_centroid(loop, el.area);
    el.diameter = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        el.diameter = std::max(el.diameter, (loop[i] - loop[j]).norm());
    el.convex = true;
    for (int i = 0; i < n; ++i) {
      const Vec2 u = loop[(i + 1) % n] - loop[i];
      const Vec2 v = loop[(i + 2) % n] - loop[(i + 1) % n];
      if (cross2(u, v) < -1e-14 * el.diameter * el.diameter) {
        el.convex = false;
        break;
      }
    }
    all_convex = all_convex && el.convex;
    el.sigma.resize(n);
    for (int i = 0; i < n; ++i) {
      const Edge& e = edges[el.edges[i]];
      el.sigma[i] = (el.verts[i] == e.v0 && el.verts[(i + 1) % n] == e.v1) ? 1 : -1;
    }
  }
}

PolytopalMesh gen_triangular(int level) {
  check_level(level);
  const int n = 1 << (level - 1);
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(double(i) / n, double(j) / n);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  std::vector<std::vector<int>> loops;
  loops.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      loops.push_back({a, b, c});
      loops.push_back({a, c, d});
    }
  return PolytopalMesh::from_cells(std::move(verts), std::move(loops), level);
}

PolytopalMesh gen_pentagonal(int level) {
  check_level(level);
  const int n = 1 << (level - 1);
  std::vector<Vec2> verts;
  verts.reserve(static_cast<std::size_t>((n + 1) * (n + 1) + 2 * n * n));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      verts.emplace_back(double(i) / n, double(j) / n);
  auto vid = [n](int i, int j) { return j * (n + 1) + i; };

  // two zigzag points per cell, at (5/6, 1/3) and (1/6, 2/3) in cell coordinates
  const int zbase = (n + 1) * (n + 1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      verts.emplace_back((i + 5.0 / 6.0) / n, (j + 1.0 / 3.0) / n);
      verts.emplace_back((i + 1.0 / 6.0) / n, (j + 2.0 / 3.0) / n);
    }

  std::vector<std::vector<int>> loops;
  loops.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const int a = vid(i, j), b = vid(i + 1, j), c = vid(i + 1, j + 1), d = vid(i, j + 1);
      const int z1 = zbase + 2 * (j * n + i);     // lower zigzag point
      const int z2 = z1 + 1;                      // upper zigzag point
      loops.push_back({a, b, c, z2, z1});
      loops.push_back({a, z1, z2, c, d});
    }
  return PolytopalMesh::from_cells(std::move(verts), std::move(loops), level);
}

std::vector<MeshViolation> validate(const PolytopalMesh& mesh) {
  std::vector<MeshViolation> out;
  auto flag = [&out](std::string entity, int index, std::string rule) {
    out.push_back({std::move(entity), index, std::move(rule)});
  };

  const long v = static_cast<long>(mesh.vertices.size());
  const long e = static_cast<long>(mesh.edges.size());
  const long f = static_cast<long>(mesh.elements.size()) + 1;
  if (v - e + f != 2) flag("mesh", -1, "Euler formula V - E + F = 2");

  std::vector<int> refs(mesh.edges.size(), 0);
  std::vector<int> sigma_sum(mesh.edges.size(), 0);
  for (std::size_t t = 0; t < mesh.elements.size(); ++t) {
    const Element& el = mesh.elements[t];
    const auto loop = mesh.element_loop(static_cast<int>(t));
    double area = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i)
      area += 0.5 * cross2(loop[i], loop[(i + 1) % loop.size()]);
    if (area <= 0.0) flag("element", static_cast<int>(t), "element orientation (CCW loop, positive area)");
    double diam = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i)
      for (std::size_t j = i + 1; j < loop.size(); ++j)
        diam = std::max(diam, (loop[i] - loop[j]).norm());
    if (std::abs(diam - el.diameter) > 1e-12 * (1.0 + diam))
      flag("element", static_cast<int>(t), "diameter equals max pairwise vertex distance");
    for (int i = 0; i < el.n_edges(); ++i) {
      const int ei = el.edges[i];
      refs[ei] += 1;
      sigma_sum[ei] += el.sigma[i];
      const Edge& ed = mesh.edges[ei];
      if (ed.elems[0] != static_cast<int>(t) && ed.elems[1] != static_cast<int>(t))
        flag("edge", ei, "element-edge incidence is involutive");
    }
  }

  for (std::size_t i = 0; i < mesh.edges.size(); ++i) {
    const Edge& ed = mesh.edges[i];
    const int want = ed.boundary ? 1 : 2;
    if (refs[i] != want)
      flag("edge", static_cast<int>(i),
           ed.boundary ? "boundary edge referenced by exactly 1 element"
                       : "interior edge referenced by exactly 2 elements");
    if (!ed.boundary && sigma_sum[i] != 0)
      flag("edge", static_cast<int>(i), "normal orientation consistency (sigma_L + sigma_R = 0)");
    if (ed.boundary && sigma_sum[i] != 1)
      flag("edge", static_cast<int>(i), "boundary edge normal points outward");
    if (std::abs(ed.normal.norm() - 1.0) > 1e-12)
      flag("edge", static_cast<int>(i), "unit normal");
    const Vec2 tang = mesh.vertices[ed.v1] - mesh.vertices[ed.v0];
    if (std::abs(ed.normal.dot(tang)) > 1e-12 * tang.norm())
      flag("edge", static_cast<int>(i), "normal perpendicular to tangent");
  }
  return out;
}

void save_mesh(const PolytopalMesh& mesh, std::ostream& out) {
  char buf[64];
  out << "wgmesh 1 " << mesh.level << "\n";
  out << "vertices " << mesh.vertices.size() << "\n";
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu %.17g %.17g", i, mesh.vertices[i].x(),
                  mesh.vertices[i].y());
    out << buf << "\n";
  }
  out << "edges " << mesh.edges.size() << "\n";
  for (std::size_t i = 0; i < mesh.edges.size(); ++i) {
    const Edge& e = mesh.edges[i];
    out << i << " " << e.v0 << " " << e.v1 << " " << (e.boundary ? 1 : 0) << "\n";
  }
  out << "elements " << mesh.elements.size() << "\n";
  for (std::size_t i = 0; i < mesh.elements.size(); ++i) {
    out << i << " " << mesh.elements[i].verts.size();
    for (int v : mesh.elements[i].verts) out << " " << v;
    out << "\n";
  }
}

PolytopalMesh load_mesh(std::istream& in) {
  std::string magic;
  int version = 0, level = 0;
  in >> magic >> version >> level;
  if (!in || magic != "wgmesh" || version != 1)
    throw MeshError("not a wgmesh version-1 document");

  std::string section;
  std::size_t count = 0;
  in >> section >> count;
  if (!in || section != "vertices") throw MeshError("expected vertices section");
  std::vector<Vec2> verts(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t idx;
    double x, y;
    in >> idx >> x >> y;
    if (!in || idx != i) throw MeshError("bad vertex record");
    verts[i] = Vec2(x, y);
  }

  in >> section >> count;
  if (!in || section != "edges") throw MeshError("expected edges section");
  struct EdgeRec { int v0, v1, boundary; };
  std::vector<EdgeRec> edge_recs(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t idx;
    in >> idx >> edge_recs[i].v0 >> edge_recs[i].v1 >> edge_recs[i].boundary;
    if (!in || idx != i) throw MeshError("bad edge record");
  }

  in >> section >> count;
  if (!in || section != "elements") throw MeshError("expected elements section");
  std::vector<std::vector<int>> loops(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t idx, n;
    in >> idx >> n;
    if (!in || idx != i) throw MeshError("bad element record");
    loops[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) in >> loops[i][j];
    if (!in) throw MeshError("bad element record");
  }

  PolytopalMesh mesh = PolytopalMesh::from_cells(std::move(verts), std::move(loops), level);
  if (mesh.edges.size() != edge_recs.size())
    throw MeshError("edge section does not match element topology");
  for (std::size_t i = 0; i < edge_recs.size(); ++i) {
    const Edge& e = mesh.edges[i];
    const auto got = std::minmax(e.v0, e.v1);
    const auto want = std::minmax(edge_recs[i].v0, edge_recs[i].v1);
    if (got != want || (edge_recs[i].boundary != 0) != e.boundary)
      throw MeshError("edge record " + std::to_string(i) + " does not match topology");
  }
  return mesh;
}

} // namespace wg
