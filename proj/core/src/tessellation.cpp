#include "plcp/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "plcp/delaunay.hpp"
#include "plcp/errors.hpp"
#include "plcp/predicates.hpp"

namespace plcp {
namespace {

constexpr std::uint32_t kGhost = DelaunayTriangulation::kGhost;

Point2 unit(Point2 v) {
  const double n = norm(v);
  return n > 0.0 ? (1.0 / n) * v : v;
}

std::vector<Point2> positions_of(const Realization& real) {
  std::vector<Point2> out;
  out.reserve(real.points.size());
  for (const CoxPoint& p : real.points) out.push_back(p.position);
  return out;
}

void build_collinear(Tessellation& tess) {
  const std::size_t n = tess.generators.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Point2 pa = tess.generators[a], pb = tess.generators[b];
    return pa.x < pb.x || (pa.x == pb.x && pa.y < pb.y);
  });
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t a = order[k], b = order[k + 1];
    const Point2 pa = tess.generators[a], pb = tess.generators[b];
    const Point2 d = pb - pa;
    VoronoiEdge edge;
    edge.generator_a = a;
    edge.generator_b = b;
    edge.anchor = 0.5 * (pa + pb);
    edge.direction = unit(Point2{-d.y, d.x});
    tess.edges.push_back(edge);
    tess.cells[a].neighbors.push_back(b);
    tess.cells[b].neighbors.push_back(a);
  }
}

void build_from_triangulation(Tessellation& tess, const DelaunayTriangulation& dt) {
  const auto& tris = dt.triangles();
  const auto& pts = tess.generators;
  std::vector<std::size_t> vertex_of(tris.size(), SIZE_MAX);
  for (std::size_t ti = 0; ti < tris.size(); ++ti) {
    const auto& t = tris[ti];
    if (t.is_ghost()) continue;
    vertex_of[ti] = tess.vertices.size();
    tess.vertices.push_back(predicates::circumcenter(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]]));
    tess.vertex_generators.push_back({t.v[0], t.v[1], t.v[2]});
  }

  for (std::size_t ti = 0; ti < tris.size(); ++ti) {
    const auto& t = tris[ti];
    if (t.is_ghost()) continue;
    for (int i = 0; i < 3; ++i) {
      const std::uint32_t u = t.v[(i + 1) % 3];
      const std::uint32_t w = t.v[(i + 2) % 3];
      const std::uint32_t ni = t.n[i];
      VoronoiEdge edge;
      edge.generator_a = u;
      edge.generator_b = w;
      edge.v1 = vertex_of[ti];
      edge.anchor = tess.vertices[vertex_of[ti]];
      if (tris[ni].is_ghost()) {
        // Hull edge u -> w has the triangle on its left; the ray leaves to the right.
        const Point2 d = pts[w] - pts[u];
        edge.direction = unit(Point2{d.y, -d.x});
      } else if (ni > ti) {
        edge.v2 = vertex_of[ni];
      } else {
        continue;
      }
      tess.edges.push_back(edge);
    }
  }

  for (std::size_t g = 0; g < pts.size(); ++g) {
    std::vector<std::uint32_t> fan;
    const std::uint32_t start = dt.incident_triangle(g);
    std::uint32_t ti = start;
    do {
      fan.push_back(ti);
      const auto& t = tris[ti];
      const int j = t.v[0] == g ? 0 : (t.v[1] == g ? 1 : 2);
      ti = t.n[(j + 1) % 3];
    } while (ti != start && fan.size() <= tris.size());

    VoronoiCell& cell = tess.cells[g];
    const auto ghost = std::find_if(fan.begin(), fan.end(),
                                    [&](std::uint32_t k) { return tris[k].is_ghost(); });
    cell.bounded = ghost == fan.end();
    if (!cell.bounded) {
      // Start the chain right after the run of ghost triangles.
      const std::size_t m = fan.size();
      for (std::size_t k = 0; k < m; ++k) {
        if (tris[fan[k]].is_ghost() && !tris[fan[(k + 1) % m]].is_ghost()) {
          std::rotate(fan.begin(), fan.begin() + static_cast<std::ptrdiff_t>((k + 1) % m),
                      fan.end());
          break;
        }
      }
    }
    for (std::uint32_t k : fan) {
      const auto& t = tris[k];
      const int j = t.v[0] == g ? 0 : (t.v[1] == g ? 1 : 2);
      if (!t.is_ghost()) cell.vertices.push_back(vertex_of[k]);
      const std::uint32_t next = t.v[(j + 1) % 3];
      if (next != kGhost) cell.neighbors.push_back(next);
    }
  }
}

// Keeps the part of the convex polygon with dot(x, q) <= |q|^2 / 2.
void clip_by_bisector(std::vector<Point2>& poly, Point2 q, std::vector<Point2>& scratch) {
  const double c = 0.5 * norm2(q);
  scratch.clear();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i];
    const Point2 b = poly[(i + 1) % n];
    const double fa = dot(a, q) - c;
    const double fb = dot(b, q) - c;
    if (fa <= 0.0) scratch.push_back(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
      const double s = fa / (fa - fb);
      scratch.push_back(a + s * (b - a));
    }
  }
  poly.swap(scratch);
}

double max_radius(const std::vector<Point2>& poly) {
  double m = 0.0;
  for (const Point2& p : poly) m = std::max(m, norm(p));
  return m;
}

}  // namespace

bool Tessellation::cell_contains(std::size_t generator, Point2 p, double tolerance) const {
  const double own = norm2(p - generators.at(generator));
  const double slack = tolerance * std::max(1.0, own);
  for (std::size_t nb : cells.at(generator).neighbors) {
    if (norm2(p - generators[nb]) < own - slack) return false;
  }
  return true;
}

std::vector<std::size_t> Tessellation::vertex_degrees() const {
  std::vector<std::size_t> degree(vertices.size(), 0);
  for (const VoronoiEdge& e : edges) {
    if (e.v1) ++degree[*e.v1];
    if (e.v2) ++degree[*e.v2];
  }
  return degree;
}

Tessellation build_voronoi(std::span<const Point2> generators, double obs_radius,
                           double sim_radius) {
  if (generators.empty()) throw DomainError("tessellation needs at least one point");
  Tessellation tess;
  tess.generators.assign(generators.begin(), generators.end());
  tess.obs_radius = obs_radius;
  tess.sim_radius = sim_radius;
  tess.cells.resize(generators.size());
  for (std::size_t i = 0; i < generators.size(); ++i) tess.cells[i].generator = i;

  const DelaunayTriangulation dt(generators);
  if (dt.collinear()) {
    build_collinear(tess);
  } else {
    build_from_triangulation(tess, dt);
    tess.cocircular_certificates = dt.cocircular_certificates();
  }
  return tess;
}

Tessellation build_voronoi(const Realization& real) {
  const std::vector<Point2> pts = positions_of(real);
  return build_voronoi(pts, real.obs_radius, real.sim_radius);
}

FacetCounts facet_counts(const Tessellation& tess, double counting_radius) {
  if (!(counting_radius > 0.0)) throw DomainError("counting radius must be positive");
  if (counting_radius > tess.obs_radius) {
    throw DomainError("counting radius exceeds the observation radius");
  }
  const double r2 = counting_radius * counting_radius;
  FacetCounts counts;
  counts.counting_radius = counting_radius;
  for (const Point2& v : tess.vertices) {
    if (norm2(v) < r2) ++counts.n_vertices;
  }
  for (const Point2& g : tess.generators) {
    if (norm2(g) < r2) ++counts.n_cells;
  }
  for (const VoronoiEdge& e : tess.edges) {
    if (!e.bounded()) continue;
    const Point2 mid = 0.5 * (tess.vertices[*e.v1] + tess.vertices[*e.v2]);
    if (norm2(mid) < r2) ++counts.n_edges;
  }
  return counts;
}

double default_counting_radius(const ModelParams& params, double obs_radius) {
  params.validate();
  const double radius =
      obs_radius - 2.0 / std::sqrt(std::numbers::pi * params.mu * params.lambda_l);
  if (!(radius > 0.0)) {
    throw DomainError("observation window too small for the default counting margin");
  }
  return radius;
}

std::size_t gqp_census(std::span<const Point2> points) {
  const DelaunayTriangulation dt(points);
  return dt.collinear() ? 0 : dt.cocircular_certificates();
}

std::size_t gqp_census(const Realization& real) {
  const std::vector<Point2> pts = positions_of(real);
  return gqp_census(pts);
}

std::vector<Point2> typical_cell(const Realization& real) {
  if (!real.palm || real.points.empty() || real.lines.empty()) {
    throw DomainError("typical cell needs a Palm realization");
  }
  if (!(real.points.front().position == Point2{0.0, 0.0}) ||
      !(real.lines.front() == LineParams{0.0, 0.0})) {
    throw DomainError("typical line must be aligned with the x-axis (align_typical_line)");
  }
  const double big = real.sim_radius;
  std::vector<Point2> poly{{-big, -big}, {big, -big}, {big, big}, {-big, big}};
  std::vector<Point2> scratch;

  std::vector<double> dist2(real.points.size());
  for (std::size_t i = 1; i < real.points.size(); ++i) {
    dist2[i] = norm2(real.points[i].position);
    if (dist2[i] == 0.0) throw DegenerateInput("a second point sits at the origin");
  }

  std::vector<std::size_t> batch;
  double done = 0.0;
  double reach = std::min(big, 1.0);
  for (;;) {
    batch.clear();
    for (std::size_t i = 1; i < real.points.size(); ++i) {
      if (dist2[i] > done * done && dist2[i] <= reach * reach) batch.push_back(i);
    }
    std::sort(batch.begin(), batch.end(),
              [&](std::size_t a, std::size_t b) { return dist2[a] < dist2[b]; });
    double bound = 2.0 * max_radius(poly);
    for (std::size_t i : batch) {
      if (dist2[i] >= bound * bound) break;
      clip_by_bisector(poly, real.points[i].position, scratch);
      bound = 2.0 * max_radius(poly);
    }
    // No unprocessed point (all beyond `reach`) can reach a cell within reach / 2.
    if (bound <= reach) return poly;
    if (reach >= big) {
      throw InsufficientWindow("typical cell is not certified inside the simulation disk");
    }
    done = reach;
    reach = std::min(big, bound);
  }
}

CellExtent cell_extent(std::span<const Point2> polygon) {
  CellExtent ext;
  if (polygon.size() < 3) return ext;
  double s_plus = std::numeric_limits<double>::infinity();
  double s_minus = s_plus;
  double xmin = polygon[0].x, xmax = xmin;
  double twice_area = 0.0;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[(i + 1) % polygon.size()];
    xmin = std::min(xmin, a.x);
    xmax = std::max(xmax, a.x);
    twice_area += cross(a, b);
    // Supporting half-plane of edge a -> b: dot(n, x) <= dot(n, a).
    const Point2 n{b.y - a.y, a.x - b.x};
    const double c = dot(n, a);
    if (n.y > 0.0) s_plus = std::min(s_plus, c / n.y);
    if (n.y < 0.0) s_minus = std::min(s_minus, c / -n.y);
  }
  ext.s_plus = s_plus;
  ext.s_minus = s_minus;
  ext.width = xmax - xmin;
  ext.area = 0.5 * std::abs(twice_area);
  return ext;
}

CellExtent typical_cell_extent(const Realization& real) {
  const std::vector<Point2> poly = typical_cell(real);
  return cell_extent(poly);
}

bool polygon_contains(std::span<const Point2> polygon, Point2 p, double slack) {
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point2 a = polygon[i];
    const Point2 b = polygon[(i + 1) % polygon.size()];
    if (cross(b - a, p - a) < -slack * norm(b - a)) return false;
  }
  return true;
}

}  // namespace plcp
