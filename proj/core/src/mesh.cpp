#include "fria/mesh.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fria/error.hpp"

namespace fria {

namespace {

std::uint64_t edge_key(Index a, Index b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return (lo << 32) | hi;
}

// Grid of (n+1)^2 nodes; `keep(i,j)` selects the cells to triangulate.
template <class KeepCell>
TriMesh structured_mesh(int n, int level, KeepCell keep) {
  const double h = 1.0 / n;
  const auto stride = static_cast<std::size_t>(n + 1);
  std::vector<Index> node(stride * stride, -1);
  // A node is used if any of its four surrounding cells is kept.
  auto used = [&](int i, int j) {
    for (int dj = -1; dj <= 0; ++dj) {
      for (int di = -1; di <= 0; ++di) {
        const int ci = i + di, cj = j + dj;
        if (ci >= 0 && cj >= 0 && ci < n && cj < n && keep(ci, cj)) return true;
      }
    }
    return false;
  };
  std::vector<Point> vertices;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      if (!used(i, j)) continue;
      node[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)] = static_cast<Index>(vertices.size());
      vertices.push_back({i * h, j * h});
    }
  }
  auto id = [&](int i, int j) { return node[static_cast<std::size_t>(j) * stride + static_cast<std::size_t>(i)]; };
  std::vector<TriMesh::Triangle> triangles;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (!keep(i, j)) continue;
      const Index a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      triangles.push_back({a, b, c});
      triangles.push_back({a, c, d});
    }
  }
  return TriMesh::from_triangles(std::move(vertices), std::move(triangles), level);
}

}  // namespace

TriMesh TriMesh::from_triangles(std::vector<Point> vertices, std::vector<Triangle> triangles, int level) {
  TriMesh m;
  m.level_ = level;
  m.vertices_ = std::move(vertices);
  m.triangles_ = std::move(triangles);
  const auto nv = static_cast<Index>(m.vertices_.size());
  for (const auto& tri : m.triangles_) {
    for (Index v : tri) {
      if (v < 0 || v >= nv) throw InvalidInput("triangle references vertex " + std::to_string(v) + " out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      throw InvalidInput("triangle repeats vertex " + std::to_string(tri[0] == tri[1] ? tri[0] : tri[2]));
    }
  }
  m.triangle_edges_.resize(m.triangles_.size());
  std::unordered_map<std::uint64_t, Index> lookup;
  lookup.reserve(m.triangles_.size() * 2);
  for (std::size_t t = 0; t < m.triangles_.size(); ++t) {
    const auto& tri = m.triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const Index a = tri[static_cast<std::size_t>((i + 1) % 3)];
      const Index b = tri[static_cast<std::size_t>((i + 2) % 3)];
      auto [it, inserted] = lookup.try_emplace(edge_key(a, b), static_cast<Index>(m.edges_.size()));
      if (inserted) {
        Edge e;
        e.v = {a, b};
        e.tri[0] = static_cast<Index>(t);
        m.edges_.push_back(e);
      } else {
        Edge& e = m.edges_[static_cast<std::size_t>(it->second)];
        if (e.tri[1] == kNoTriangle) {
          e.tri[1] = static_cast<Index>(t);
        } else {
          ++m.overloaded_edges_;
        }
      }
      m.triangle_edges_[t][static_cast<std::size_t>(i)] = it->second;
    }
  }
  m.boundary_vertex_.assign(m.vertices_.size(), 0);
  for (const auto& e : m.edges_) {
    if (e.on_boundary()) {
      m.boundary_vertex_[static_cast<std::size_t>(e.v[0])] = 1;
      m.boundary_vertex_[static_cast<std::size_t>(e.v[1])] = 1;
    }
  }
  return m;
}

double TriMesh::edge_sign(Index t, int local) const {
  const Edge& e = edge(triangle_edges(t)[static_cast<std::size_t>(local)]);
  return e.tri[0] == t ? 1.0 : -1.0;
}

std::size_t TriMesh::num_boundary_vertices() const {
  std::size_t n = 0;
  for (auto f : boundary_vertex_) n += f;
  return n;
}

double TriMesh::signed_area(Index t) const {
  const auto& tri = triangle(t);
  const Point& a = vertex(tri[0]);
  return 0.5 * cross(vertex(tri[1]) - a, vertex(tri[2]) - a);
}

double TriMesh::total_area() const {
  double s = 0.0;
  for (std::size_t t = 0; t < triangles_.size(); ++t) s += signed_area(static_cast<Index>(t));
  return s;
}

double TriMesh::edge_length(Index e) const {
  const Edge& ed = edge(e);
  const Vec2 d = vertex(ed.v[1]) - vertex(ed.v[0]);
  return std::hypot(d.x, d.y);
}

Vec2 TriMesh::edge_normal(Index e) const {
  const Edge& ed = edge(e);
  const Vec2 d = vertex(ed.v[1]) - vertex(ed.v[0]);
  const double len = std::hypot(d.x, d.y);
  return {d.y / len, -d.x / len};
}

Point TriMesh::edge_midpoint(Index e) const {
  const Edge& ed = edge(e);
  return 0.5 * (vertex(ed.v[0]) + vertex(ed.v[1]));
}

TriMesh build_lshape(int level) {
  if (level < 0 || level > kMaxLshapeLevel) {
    throw InvalidInput("L-shape level must lie in [0, " + std::to_string(kMaxLshapeLevel) + "], got " +
                       std::to_string(level));
  }
  const int n = 16 << level;
  const int half = n / 2;
  return structured_mesh(n, level, [half](int i, int j) { return !(i >= half && j < half); });
}

TriMesh build_unit_square(int n) {
  if (n < 1) throw InvalidInput("unit square needs n >= 1, got " + std::to_string(n));
  return structured_mesh(n, 0, [](int, int) { return true; });
}

std::vector<std::string> validate(const TriMesh& m) {
  std::vector<std::string> out;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const double a = m.signed_area(static_cast<Index>(t));
    if (!(a > 0.0)) {
      std::ostringstream os;
      os << "orientation: triangle " << t << " has signed area " << a;
      out.push_back(os.str());
    }
  }

  // Recount edge incidences from the triangles alone.
  std::map<std::pair<Index, Index>, int> incidence;
  for (const auto& tri : m.triangles()) {
    for (int i = 0; i < 3; ++i) {
      const Index a = tri[static_cast<std::size_t>(i)], b = tri[static_cast<std::size_t>((i + 1) % 3)];
      ++incidence[{std::min(a, b), std::max(a, b)}];
    }
  }
  for (const auto& [key, count] : incidence) {
    if (count > 2) {
      out.push_back("adjacency: edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                    ") borders " + std::to_string(count) + " triangles");
    }
  }
  if (incidence.size() != m.num_edges()) {
    out.push_back("adjacency: " + std::to_string(m.num_edges()) + " stored edges but " +
                  std::to_string(incidence.size()) + " distinct triangle sides");
  }

  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const Edge& ed = m.edge(static_cast<Index>(e));
    for (Index t : ed.tri) {
      if (t == kNoTriangle) continue;
      const auto& tri = m.triangle(t);
      for (Index v : ed.v) {
        if (v != tri[0] && v != tri[1] && v != tri[2]) {
          out.push_back("conformity: edge " + std::to_string(e) + " endpoint " + std::to_string(v) +
                        " is not a vertex of adjacent triangle " + std::to_string(t));
        }
      }
    }
    if (ed.tri[1] != kNoTriangle && ed.tri[1] <= ed.tri[0]) {
      out.push_back("orientation: edge " + std::to_string(e) + " triangle references out of order");
    }
  }

  const auto euler = static_cast<long long>(m.num_vertices()) - static_cast<long long>(m.num_edges()) +
                     static_cast<long long>(m.num_triangles());
  if (euler != 1) out.push_back("euler: V - E + T = " + std::to_string(euler) + ", expected 1");
  return out;
}

void write_mesh(std::ostream& os, const TriMesh& m) {
  os << std::setprecision(17);
  os << "$vertices " << m.num_vertices() << '\n';
  for (const auto& p : m.vertices()) os << p.x << ' ' << p.y << '\n';
  os << "$triangles " << m.num_triangles() << '\n';
  for (const auto& t : m.triangles()) os << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os << "$edges " << m.num_edges() << '\n';
  for (const auto& e : m.edges()) os << e.v[0] << ' ' << e.v[1] << ' ' << e.tri[0] << ' ' << e.tri[1] << '\n';
}

TriMesh read_mesh(std::istream& is) {
  auto header = [&](const std::string& name) {
    std::string tag;
    std::size_t count = 0;
    if (!(is >> tag >> count) || tag != name) throw InvalidInput("mesh dump: expected section " + name);
    return count;
  };
  std::vector<Point> vertices(header("$vertices"));
  for (auto& p : vertices) {
    if (!(is >> p.x >> p.y)) throw InvalidInput("mesh dump: truncated $vertices");
  }
  std::vector<TriMesh::Triangle> triangles(header("$triangles"));
  for (auto& t : triangles) {
    if (!(is >> t[0] >> t[1] >> t[2])) throw InvalidInput("mesh dump: truncated $triangles");
  }
  return TriMesh::from_triangles(std::move(vertices), std::move(triangles));
}

}  // namespace fria
