#include "fria/flux.hpp"

#include <array>
#include <cmath>

#include "fria/error.hpp"

namespace fria {

namespace {

void require_same_mesh(const RT0Field& y, const P1Solution& s) {
  if (&y.mesh() != &s.mesh()) throw InvalidInput("flux and solution live on different meshes");
}

double defect_squared(const RT0Field& y, const P1Solution& s, const FullWeight& alpha, Index t) {
  const TriMesh& m = y.mesh();
  const Vec2 q = apply(alpha, s.gradient(t));
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Point mid = m.edge_midpoint(m.triangle_edges(t)[static_cast<std::size_t>(i)]);
    sum += inverse_quadratic_form(alpha, y.value(t, mid) - q);
  }
  return sum * m.area(t) / 3.0;
}

// Symmetric 7-point rule, degree 5 (barycentric coordinates, weights sum to 1).
struct QuadPoint {
  double l0, l1, l2, w;
};

const std::array<QuadPoint, 7>& seven_point_rule() {
  static const std::array<QuadPoint, 7> rule = [] {
    const double s15 = std::sqrt(15.0);
    const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0, w1 = (155.0 - s15) / 1200.0;
    const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0, w2 = (155.0 + s15) / 1200.0;
    return std::array<QuadPoint, 7>{{{1.0 / 3, 1.0 / 3, 1.0 / 3, 9.0 / 40.0},
                                     {a1, a1, b1, w1},
                                     {a1, b1, a1, w1},
                                     {b1, a1, a1, w1},
                                     {a2, a2, b2, w2},
                                     {a2, b2, a2, w2},
                                     {b2, a2, a2, w2}}};
  }();
  return rule;
}

}  // namespace

RT0Field::RT0Field(const TriMesh& mesh, std::vector<double> edge_dofs) : mesh_(&mesh), dofs_(std::move(edge_dofs)) {
  if (dofs_.size() != mesh.num_edges()) throw InvalidInput("RT0Field: one dof per edge expected");
}

Vec2 RT0Field::value(Index t, Point x) const {
  // Basis for the edge opposite vertex p_i: (x - p_i) / (2|T|), unit outward flux.
  const auto& tri = mesh_->triangle(t);
  const double two_area = 2.0 * mesh_->area(t);
  Vec2 v;
  for (int i = 0; i < 3; ++i) {
    const Index e = mesh_->triangle_edges(t)[static_cast<std::size_t>(i)];
    const double flux = mesh_->edge_sign(t, i) * dof(e);
    v = v + (flux / two_area) * (x - mesh_->vertex(tri[static_cast<std::size_t>(i)]));
  }
  return v;
}

RT0Field rt_average(const TriMesh& m, std::span<const Vec2> flux_per_triangle) {
  if (flux_per_triangle.size() != m.num_triangles()) throw InvalidInput("rt_average: one flux per triangle expected");
  std::vector<double> dofs(m.num_edges());
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const auto ei = static_cast<Index>(e);
    const Edge& ed = m.edge(ei);
    const Vec2 n = m.edge_normal(ei);
    double normal = dot(flux_per_triangle[static_cast<std::size_t>(ed.tri[0])], n);
    if (!ed.on_boundary()) {
      normal = 0.5 * (normal + dot(flux_per_triangle[static_cast<std::size_t>(ed.tri[1])], n));
    }
    dofs[e] = m.edge_length(ei) * normal;
  }
  return RT0Field(m, std::move(dofs));
}

RT0Field rt_average(const P1Solution& s, const FullWeight& alpha) {
  const TriMesh& m = s.mesh();
  std::vector<Vec2> flux(m.num_triangles());
  for (std::size_t t = 0; t < flux.size(); ++t) flux[t] = apply(alpha, s.gradient(static_cast<Index>(t)));
  return rt_average(m, flux);
}

std::vector<double> rt_divergence(const RT0Field& y) {
  const TriMesh& m = y.mesh();
  std::vector<double> div(m.num_triangles());
  for (std::size_t t = 0; t < div.size(); ++t) {
    const auto ti = static_cast<Index>(t);
    double sum = 0.0;
    for (int i = 0; i < 3; ++i) sum += m.edge_sign(ti, i) * y.dof(m.triangle_edges(ti)[static_cast<std::size_t>(i)]);
    div[t] = sum / m.area(ti);
  }
  return div;
}

FluxNorms flux_defect_norms(const RT0Field& y, const P1Solution& s, const FullWeight& alpha, double f) {
  require_same_mesh(y, s);
  const TriMesh& m = y.mesh();
  const auto div = rt_divergence(y);
  double res = 0.0, defect = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto ti = static_cast<Index>(t);
    const double r = f + div[t];
    res += m.area(ti) * r * r;
    defect += defect_squared(y, s, alpha, ti);
  }
  return {std::sqrt(res), std::sqrt(defect)};
}

FluxNorms flux_defect_norms(const RT0Field& y, const P1Solution& s, const FullWeight& alpha,
                            const std::function<double(Point)>& f) {
  require_same_mesh(y, s);
  const TriMesh& m = y.mesh();
  const auto div = rt_divergence(y);
  double res = 0.0, defect = 0.0;
  for (std::size_t t = 0; t < m.num_triangles(); ++t) {
    const auto ti = static_cast<Index>(t);
    const auto& tri = m.triangle(ti);
    const Point& p0 = m.vertex(tri[0]);
    const Point& p1 = m.vertex(tri[1]);
    const Point& p2 = m.vertex(tri[2]);
    double local = 0.0;
    for (const auto& q : seven_point_rule()) {
      const Point x = q.l0 * p0 + q.l1 * p1 + q.l2 * p2;
      const double r = f(x) + div[t];
      local += q.w * r * r;
    }
    res += m.area(ti) * local;
    defect += defect_squared(y, s, alpha, ti);
  }
  return {std::sqrt(res), std::sqrt(defect)};
}

}  // namespace fria
