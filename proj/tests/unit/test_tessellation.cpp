#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "plcp/delaunay.hpp"
#include "plcp/errors.hpp"
#include "plcp/predicates.hpp"
#include "plcp/tessellation.hpp"

namespace plcp {
namespace {

using Tri = DelaunayTriangulation::Triangle;
constexpr std::uint32_t kGhost = DelaunayTriangulation::kGhost;

std::vector<Point2> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point2> pts(n);
  for (Point2& p : pts) p = {u(rng), u(rng)};
  return pts;
}

std::size_t hull_size(const std::vector<Point2>& pts) {
  std::vector<Point2> p = pts;
  std::sort(p.begin(), p.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  std::vector<Point2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && predicates::orient2d(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && predicates::orient2d(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  return k - 1;
}

void expect_valid_delaunay(const DelaunayTriangulation& dt, bool brute_force) {
  const auto& tris = dt.triangles();
  const auto pts = dt.points();
  for (std::uint32_t ti = 0; ti < tris.size(); ++ti) {
    const Tri& t = tris[ti];
    for (int i = 0; i < 3; ++i) {
      // Neighbour relation is symmetric and shares the edge.
      const Tri& o = tris[t.n[i]];
      const auto back = std::count(o.n.begin(), o.n.end(), ti);
      ASSERT_GE(back, 1);
      const std::uint32_t a = t.v[(i + 1) % 3], b = t.v[(i + 2) % 3];
      ASSERT_TRUE(std::count(o.v.begin(), o.v.end(), a) == 1 &&
                  std::count(o.v.begin(), o.v.end(), b) == 1);
    }
    if (t.is_ghost()) continue;
    ASSERT_EQ(predicates::orient2d(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]]), 1);
    if (brute_force) {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        ASSERT_LE(predicates::incircle(pts[t.v[0]], pts[t.v[1]], pts[t.v[2]], pts[k]), 0);
      }
    }
  }
}

TEST(Delaunay, RandomPointsEmptyCircumcircles) {
  const auto pts = random_points(300, 1);
  const DelaunayTriangulation dt(pts);
  EXPECT_FALSE(dt.collinear());
  expect_valid_delaunay(dt, true);
  EXPECT_EQ(dt.finite_triangle_count(), 2 * pts.size() - 2 - hull_size(pts));
  EXPECT_EQ(dt.cocircular_certificates(), 0u);
}

TEST(Delaunay, LargeInputIsConsistent) {
  const auto pts = random_points(20000, 2);
  const DelaunayTriangulation dt(pts);
  expect_valid_delaunay(dt, false);
  EXPECT_EQ(dt.finite_triangle_count(), 2 * pts.size() - 2 - hull_size(pts));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Tri& t = dt.triangles()[dt.incident_triangle(i)];
    EXPECT_EQ(std::count(t.v.begin(), t.v.end(), static_cast<std::uint32_t>(i)), 1);
  }
}

TEST(Delaunay, SquareGridIsDegenerateButValid) {
  std::vector<Point2> pts;
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) pts.push_back({double(i), double(j)});
  }
  const DelaunayTriangulation dt(pts);
  expect_valid_delaunay(dt, true);
  EXPECT_EQ(dt.finite_triangle_count(), 2u * 11u * 11u);
  // Every unit square is split by a diagonal whose quadruple is cocircular.
  EXPECT_EQ(dt.cocircular_certificates(), 11u * 11u);
}

TEST(Delaunay, DegenerateInputs) {
  const std::vector<Point2> dup{{0, 0}, {1, 0}, {0, 1}, {1, 0}};
  EXPECT_THROW(DelaunayTriangulation{dup}, DegenerateInput);
  const std::vector<Point2> line{{0, 0}, {1, 1}, {2, 2}, {-3, -3}};
  EXPECT_TRUE(DelaunayTriangulation(line).collinear());
  const std::vector<Point2> nan{{0, 0}, {1, 0}, {0, NAN}};
  EXPECT_THROW(DelaunayTriangulation{nan}, DegenerateInput);
  // Collinear prefix followed by an off-line point.
  const std::vector<Point2> late{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {1.5, 1}};
  const DelaunayTriangulation dt(late);
  expect_valid_delaunay(dt, true);
  EXPECT_EQ(dt.finite_triangle_count(), 3u);
}

TEST(Delaunay, HilbertOrderIsAPermutation) {
  const auto pts = random_points(1000, 3);
  auto order = hilbert_order(pts);
  std::sort(order.begin(), order.end());
  for (std::uint32_t i = 0; i < order.size(); ++i) EXPECT_EQ(order[i], i);
}

TEST(Voronoi, CellsAreNearestGeneratorRegions) {
  const auto pts = random_points(400, 4);
  const Tessellation tess = build_voronoi(pts, 1.0, 1.0);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int k = 0; k < 2000; ++k) {
    const Point2 p{u(rng), u(rng)};
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if (norm2(p - pts[i]) < norm2(p - pts[best])) best = i;
    }
    EXPECT_TRUE(tess.cell_contains(best, p));
    // Bounded cells contain the probe exactly when it is nearest.
    if (tess.cells[best].bounded) {
      std::vector<Point2> poly;
      for (std::size_t v : tess.cells[best].vertices) poly.push_back(tess.vertices[v]);
      EXPECT_TRUE(polygon_contains(poly, p, 1e-12));
    }
  }
}

TEST(Voronoi, VerticesAreEquidistantAndCubic) {
  const auto pts = random_points(500, 5);
  const Tessellation tess = build_voronoi(pts, 1.0, 1.0);
  ASSERT_EQ(tess.vertices.size(), tess.vertex_generators.size());
  for (std::size_t v = 0; v < tess.vertices.size(); ++v) {
    const auto& g = tess.vertex_generators[v];
    const double d0 = norm(tess.vertices[v] - pts[g[0]]);
    EXPECT_NEAR(norm(tess.vertices[v] - pts[g[1]]), d0, 1e-9 * std::max(1.0, d0));
    EXPECT_NEAR(norm(tess.vertices[v] - pts[g[2]]), d0, 1e-9 * std::max(1.0, d0));
  }
  for (std::size_t d : tess.vertex_degrees()) EXPECT_EQ(d, 3u);
  for (const VoronoiEdge& e : tess.edges) {
    if (!e.bounded()) continue;
    for (std::size_t v : {*e.v1, *e.v2}) {
      EXPECT_NEAR(norm(tess.vertices[v] - pts[e.generator_a]),
                  norm(tess.vertices[v] - pts[e.generator_b]), 1e-9);
    }
  }
}

TEST(Voronoi, GridCellIsUnitSquare) {
  std::vector<Point2> pts;
  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) pts.push_back({double(i), double(j)});
  }
  const Tessellation tess = build_voronoi(pts, 2.0, 2.0);
  const VoronoiCell& centre = tess.cells[4];
  ASSERT_TRUE(centre.bounded);
  std::vector<Point2> poly;
  for (std::size_t v : centre.vertices) poly.push_back(tess.vertices[v]);
  const CellExtent ext = cell_extent(poly);
  EXPECT_NEAR(ext.area, 1.0, 1e-12);
  EXPECT_NEAR(ext.width, 1.0, 1e-12);
  EXPECT_NEAR(ext.s_plus, 0.5, 1e-12);
  EXPECT_GT(tess.cocircular_certificates, 0u);
}

TEST(Voronoi, CollinearGeneratorsGiveParallelLines) {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {3, 0}};
  const Tessellation tess = build_voronoi(pts, 5.0, 5.0);
  EXPECT_TRUE(tess.vertices.empty());
  ASSERT_EQ(tess.edges.size(), 2u);
  for (const VoronoiEdge& e : tess.edges) {
    EXPECT_FALSE(e.v1.has_value());
    EXPECT_NEAR(std::abs(e.direction.y), 1.0, 1e-15);
  }
  EXPECT_TRUE(tess.cell_contains(1, {1.9, 7.0}));
  EXPECT_FALSE(tess.cell_contains(1, {2.1, 7.0}));
  EXPECT_THROW(build_voronoi(std::vector<Point2>{}, 1.0, 1.0), DomainError);
  EXPECT_NO_THROW(build_voronoi(std::vector<Point2>{{0, 0}}, 1.0, 1.0));
}

TEST(Voronoi, FacetCountsMinusSampling) {
  const Realization real = sample_stationary({1.0, 1.0}, 8.0, 3.0, {21, 0});
  const Tessellation tess = build_voronoi(real);
  const FacetCounts c = facet_counts(tess, 6.0);
  EXPECT_EQ(c.n_cells, count_in_disk(real, {0, 0}, 6.0) -
                           static_cast<std::size_t>(std::count_if(
                               real.points.begin(), real.points.end(),
                               [](const CoxPoint& p) { return norm(p.position) == 6.0; })));
  EXPECT_GT(c.n_vertices, 0u);
  EXPECT_GT(c.n_edges, c.n_vertices);
  EXPECT_THROW(facet_counts(tess, 9.0), DomainError);
  EXPECT_THROW(facet_counts(tess, 0.0), DomainError);
  EXPECT_NEAR(default_counting_radius({1.0, 1.0}, 8.0), 8.0 - 2.0 / std::sqrt(M_PI), 1e-14);
}

TEST(Voronoi, CensusOnRandomAndCraftedInputs) {
  EXPECT_EQ(gqp_census(sample_stationary({1.0, 2.0}, 6.0, 2.0, {1, 0})), 0u);
  // Four points on the unit circle plus generic extras.
  const std::vector<Point2> crafted{{1, 0}, {0, 1}, {-1, 0}, {0, -1}, {3.1, 0.2}, {-2.7, 1.9}};
  EXPECT_GE(gqp_census(crafted), 1u);
}

TEST(TypicalCell, MatchesTheTessellationCell) {
  const ModelParams p{1.0, 3.0};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Realization real = align_typical_line(sample_palm(p, 4.0, 3.0, {31, i}));
    const std::vector<Point2> poly = typical_cell(real);
    const Tessellation tess = build_voronoi(real);
    ASSERT_TRUE(tess.cells[0].bounded);
    std::vector<Point2> reference;
    for (std::size_t v : tess.cells[0].vertices) reference.push_back(tess.vertices[v]);
    const CellExtent a = cell_extent(poly);
    const CellExtent b = cell_extent(reference);
    EXPECT_NEAR(a.area, b.area, 1e-9);
    EXPECT_NEAR(a.width, b.width, 1e-9);
    EXPECT_NEAR(a.s_plus, b.s_plus, 1e-9);
    EXPECT_NEAR(a.s_minus, b.s_minus, 1e-9);
    EXPECT_TRUE(polygon_contains(poly, {0.0, 0.0}));
  }
}

TEST(TypicalCell, VerticesAreEquidistantFromOriginAndNearest) {
  const Realization real = align_typical_line(sample_palm({1.0, 10.0}, 3.0, 3.0, {7, 0}));
  for (const Point2& v : typical_cell(real)) {
    double nearest = INFINITY;
    for (std::size_t i = 1; i < real.points.size(); ++i) {
      nearest = std::min(nearest, norm(v - real.points[i].position));
    }
    EXPECT_NEAR(nearest, norm(v), 1e-9);
  }
}

TEST(TypicalCell, Errors) {
  const Realization palm = sample_palm({1.0, 2.0}, 2.0, 1.0, {3, 0});
  if (palm.lines[0].theta != 0.0) EXPECT_THROW(typical_cell(palm), DomainError);
  EXPECT_THROW(typical_cell(sample_stationary({1.0, 2.0}, 2.0, 1.0, {3, 0})), DomainError);
  // A tiny disk cannot certify the cell.
  EXPECT_THROW(typical_cell(align_typical_line(sample_palm({0.1, 0.5}, 0.05, 0.0, {3, 0}))),
               InsufficientWindow);
}

TEST(TypicalCell, ExtentOfASquare) {
  const std::vector<Point2> square{{-1, -0.5}, {2, -0.5}, {2, 1.5}, {-1, 1.5}};
  const CellExtent ext = cell_extent(square);
  EXPECT_DOUBLE_EQ(ext.s_plus, 1.5);
  EXPECT_DOUBLE_EQ(ext.s_minus, 0.5);
  EXPECT_DOUBLE_EQ(ext.length(), 2.0);
  EXPECT_DOUBLE_EQ(ext.width, 3.0);
  EXPECT_DOUBLE_EQ(ext.area, 6.0);
  EXPECT_TRUE(polygon_contains(square, {2.0, 1.0}));
  EXPECT_FALSE(polygon_contains(square, {2.1, 1.0}));
}

}  // namespace
}  // namespace plcp
