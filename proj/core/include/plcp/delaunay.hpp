#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "plcp/geometry.hpp"

namespace plcp {

/// Delaunay triangulation of a planar point set, built incrementally
/// (Bowyer-Watson) over exact orientation and in-circle predicates.
///
/// The convex hull is closed by ghost triangles that share a vertex at
/// infinity (kGhost), so every triangle has three neighbours. Points lying
/// exactly on a circumcircle are treated as outside it, which always yields a
/// valid Delaunay triangulation.
class DelaunayTriangulation {
 public:
  static constexpr std::uint32_t kGhost = std::numeric_limits<std::uint32_t>::max();

  struct Triangle {
    std::array<std::uint32_t, 3> v;  // counterclockwise
    std::array<std::uint32_t, 3> n;  // n[i] is across the edge opposite v[i]

    bool is_ghost() const { return v[0] == kGhost || v[1] == kGhost || v[2] == kGhost; }
  };

  /// Throws DegenerateInput for coincident points.
  explicit DelaunayTriangulation(std::span<const Point2> points);

  std::span<const Point2> points() const { return points_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  /// True when all input points are collinear (or fewer than three); no
  /// triangles are built in that case.
  bool collinear() const { return collinear_; }

  /// Some triangle incident to each point.
  std::uint32_t incident_triangle(std::size_t point) const { return incident_[point]; }

  std::size_t finite_triangle_count() const;

  /// Number of interior edges whose four points are exactly cocircular.
  std::size_t cocircular_certificates() const;

 private:
  void insert(std::uint32_t point);
  std::uint32_t locate(Point2 p);
  bool in_conflict(const Triangle& t, Point2 p) const;

  std::vector<Point2> points_;
  std::vector<Triangle> triangles_;
  std::vector<std::uint32_t> incident_;
  std::uint32_t last_ = 0;
  std::uint64_t walk_counter_ = 0;
  bool collinear_ = false;

  // scratch buffers reused across insertions
  std::vector<std::uint32_t> cavity_;
  std::vector<std::uint8_t> in_cavity_;
};

/// Indices of the points sorted along a Hilbert curve over their bounding box.
std::vector<std::uint32_t> hilbert_order(std::span<const Point2> points);

}  // namespace plcp
