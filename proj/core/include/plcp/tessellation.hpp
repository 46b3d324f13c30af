#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "plcp/geometry.hpp"
#include "plcp/sampler.hpp"

namespace plcp {

/// A Voronoi edge separating the cells of two generators.
///
/// Bounded edges join two vertices. A ray starts at `v1` and runs along
/// `direction`; a full line (collinear generators only) has no vertex and
/// passes through `anchor`.
struct VoronoiEdge {
  std::size_t generator_a = 0;
  std::size_t generator_b = 0;
  std::optional<std::size_t> v1;
  std::optional<std::size_t> v2;
  Point2 anchor;
  Point2 direction;

  bool bounded() const { return v1.has_value() && v2.has_value(); }
};

struct VoronoiCell {
  std::size_t generator = 0;
  /// Vertex ids in counterclockwise order. For unbounded cells the chain runs
  /// between the two infinite edges.
  std::vector<std::size_t> vertices;
  /// Generators of the adjacent cells (Delaunay neighbours).
  std::vector<std::size_t> neighbors;
  bool bounded = false;
};

/// Voronoi tessellation of the points of a realization (cells are indexed like
/// the realization's points).
struct Tessellation {
  std::vector<Point2> generators;
  std::vector<Point2> vertices;
  /// The three generators equidistant from each vertex.
  std::vector<std::array<std::size_t, 3>> vertex_generators;
  std::vector<VoronoiEdge> edges;
  std::vector<VoronoiCell> cells;
  double obs_radius = 0.0;
  double sim_radius = 0.0;
  /// Interior Delaunay edges whose four points are exactly cocircular.
  std::size_t cocircular_certificates = 0;

  /// Whether p belongs to the (closed) cell of `generator`, up to a relative
  /// tolerance on squared distances.
  bool cell_contains(std::size_t generator, Point2 p, double tolerance = 1e-12) const;

  /// Vertex count of every vertex (number of incident edges).
  std::vector<std::size_t> vertex_degrees() const;
};

/// Builds the tessellation of the realization's point positions. Throws
/// DomainError for an empty point set and DegenerateInput for coincident
/// points.
Tessellation build_voronoi(const Realization& real);
Tessellation build_voronoi(std::span<const Point2> generators, double obs_radius,
                           double sim_radius);

struct FacetCounts {
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t n_cells = 0;
  double counting_radius = 0.0;
};

/// Minus-sampling counts inside the open disk of `counting_radius`: vertices
/// and generators by position, bounded edges by their midpoint.
FacetCounts facet_counts(const Tessellation& tess, double counting_radius);

/// Default counting radius: the observation radius shrunk by two typical
/// inter-point spacings.
double default_counting_radius(const ModelParams& params, double obs_radius);

/// Number of exactly cocircular quadruples among the Delaunay certificates of
/// the realization's points.
std::size_t gqp_census(const Realization& real);
std::size_t gqp_census(std::span<const Point2> points);

struct CellExtent {
  double s_plus = 0.0;   // along the positive y-axis
  double s_minus = 0.0;  // along the negative y-axis
  double width = 0.0;    // extent parallel to the typical line
  double area = 0.0;
  double length() const { return s_plus + s_minus; }
};

/// Voronoi cell of the origin by half-plane clipping, as a counterclockwise
/// polygon. Requires a Palm realization whose typical line is the x-axis.
/// Throws InsufficientWindow when the cell cannot be certified from the points
/// inside the simulation disk.
std::vector<Point2> typical_cell(const Realization& real);

CellExtent cell_extent(std::span<const Point2> polygon);
CellExtent typical_cell_extent(const Realization& real);

/// Whether p lies in the closed convex polygon, with absolute slack.
bool polygon_contains(std::span<const Point2> polygon, Point2 p, double slack = 0.0);

}  // namespace plcp
