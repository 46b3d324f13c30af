#pragma once

#include <cmath>
#include <numbers>

namespace plcp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2&, const Point2&) = default;
};

constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Point2 p) { return dot(p, p); }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }

/// Rotates p counterclockwise by `angle` radians about the origin.
Point2 rotate(Point2 p, double angle);

/// A line of the plane in cylinder-set coordinates.
///
/// The line is {(t cos(theta) - r sin(theta), t sin(theta) + r cos(theta)) : t real}.
/// `r` is the signed distance from the origin and `theta` the angle between the
/// line and the x-axis, kept in [0, pi) so every undirected line has exactly one
/// representation.
struct LineParams {
  double r = 0.0;
  double theta = 0.0;

  friend constexpr bool operator==(const LineParams&, const LineParams&) = default;
};

/// Builds canonical parameters for any (r, theta): theta is reduced mod pi and
/// r flips sign on every half-turn.
LineParams make_line(double r, double theta);

/// Same as make_line, also reporting whether the arc coordinate changes sign
/// under the reduction (it does whenever r does).
LineParams canonicalize(double r, double theta, bool& flipped);

/// Point at arc coordinate t; t = 0 is the foot of the perpendicular from the origin.
inline Point2 line_point(const LineParams& line, double t) {
  const double c = std::cos(line.theta);
  const double s = std::sin(line.theta);
  return {t * c - line.r * s, t * s + line.r * c};
}

/// Arc coordinate of the orthogonal projection of p onto the line.
inline double line_coordinate(const LineParams& line, Point2 p) {
  return p.x * std::cos(line.theta) + p.y * std::sin(line.theta);
}

inline double distance_to_line(Point2 p, const LineParams& line) {
  return std::abs(p.x * std::sin(line.theta) - p.y * std::cos(line.theta) + line.r);
}

/// Half the length of the chord cut by a line at distance |r| from the centre of
/// a disk of radius `radius`. Throws DomainError when the line misses the disk.
double chord_half_length(double r, double radius);

/// A disk centred at the origin.
class DiskWindow {
 public:
  explicit DiskWindow(double radius);

  double radius() const { return radius_; }
  bool contains(Point2 p) const { return norm2(p) <= radius_ * radius_; }
  double area() const { return std::numbers::pi * radius_ * radius_; }

 private:
  double radius_;
};

}  // namespace plcp
