#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fria {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

using Point = Vec2;
using Index = std::int32_t;
inline constexpr Index kNoTriangle = -1;

/// Mesh edge. `v` is ordered so that the unit normal (dy, -dx)/|e| points out
/// of tri[0] and into tri[1]; tri[0] < tri[1]. Boundary edges have
/// tri[1] == kNoTriangle and an outward normal.
struct Edge {
  std::array<Index, 2> v{};
  std::array<Index, 2> tri{kNoTriangle, kNoTriangle};

  bool on_boundary() const { return tri[1] == kNoTriangle; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Conforming triangulation with edge and adjacency structure.
class TriMesh {
 public:
  using Triangle = std::array<Index, 3>;

  /// Builds edges, triangle-edge incidence and boundary flags from raw
  /// triangles. Edges are numbered in order of first appearance when scanning
  /// triangles in order, local edge i being the one opposite vertex i.
  static TriMesh from_triangles(std::vector<Point> vertices, std::vector<Triangle> triangles, int level = 0);

  int level() const { return level_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_triangles() const { return triangles_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Point> vertices() const { return vertices_; }
  std::span<const Triangle> triangles() const { return triangles_; }
  std::span<const Edge> edges() const { return edges_; }
  const Point& vertex(Index i) const { return vertices_[static_cast<std::size_t>(i)]; }
  const Triangle& triangle(Index t) const { return triangles_[static_cast<std::size_t>(t)]; }
  const Edge& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Edge i of triangle t is opposite its local vertex i.
  const std::array<Index, 3>& triangle_edges(Index t) const { return triangle_edges_[static_cast<std::size_t>(t)]; }
  /// +1 if the normal of local edge i points out of t, -1 otherwise.
  double edge_sign(Index t, int local) const;

  bool is_boundary_vertex(Index v) const { return boundary_vertex_[static_cast<std::size_t>(v)] != 0; }
  std::size_t num_boundary_vertices() const;

  double signed_area(Index t) const;
  double area(Index t) const { return signed_area(t); }
  double total_area() const;
  double edge_length(Index e) const;
  /// Unit normal of edge e, pointing out of edge(e).tri[0].
  Vec2 edge_normal(Index e) const;
  Point edge_midpoint(Index e) const;

  /// Edges that more than two triangles claimed during construction.
  std::size_t overloaded_edges() const { return overloaded_edges_; }

 private:
  int level_ = 0;
  std::vector<Point> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Edge> edges_;
  std::vector<std::array<Index, 3>> triangle_edges_;
  std::vector<std::uint8_t> boundary_vertex_;
  std::size_t overloaded_edges_ = 0;
};

inline constexpr int kMaxLshapeLevel = 8;

/// Uniform grid of step 1/(16 * 2^level) on (0,1)^2 minus [1/2,1]x[0,1/2],
/// each cell split along its lower-left to upper-right diagonal.
TriMesh build_lshape(int level);

/// n x n cells on the unit square, same diagonal convention.
TriMesh build_unit_square(int n);

/// Every violated mesh invariant, one message each. Empty means valid.
std::vector<std::string> validate(const TriMesh& m);

/// Plain-text dump: `$vertices N`, `$triangles N`, `$edges N` sections,
/// one entity per line, 0-based indices. Edges are written as
/// `v0 v1 t0 t1` with t1 = -1 on the boundary.
void write_mesh(std::ostream& os, const TriMesh& m);
/// Reads the vertices and triangles of a dump and rebuilds the mesh.
TriMesh read_mesh(std::istream& is);

}  // namespace fria
