#include "plcp/geometry.hpp"

#include <string>

#include "plcp/errors.hpp"

namespace plcp {

Point2 rotate(Point2 p, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * p.x - s * p.y, s * p.x + c * p.y};
}

LineParams canonicalize(double r, double theta, bool& flipped) {
  constexpr double pi = std::numbers::pi;
  const double turns = std::floor(theta / pi);
  double reduced = theta - turns * pi;
  flipped = std::fmod(std::abs(turns), 2.0) == 1.0;
  // Rounding can land exactly on pi.
  if (reduced >= pi) {
    reduced = 0.0;
    flipped = !flipped;
  }
  if (reduced < 0.0) reduced = 0.0;
  return {flipped ? -r : r, reduced};
}

LineParams make_line(double r, double theta) {
  bool flipped = false;
  return canonicalize(r, theta, flipped);
}

double chord_half_length(double r, double radius) {
  const double a = std::abs(r);
  if (a > radius) {
    throw DomainError("line at distance " + std::to_string(a) + " misses the disk of radius " +
                      std::to_string(radius));
  }
  return std::sqrt((radius - a) * (radius + a));
}

DiskWindow::DiskWindow(double radius) : radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("window radius must be positive and finite");
  }
}

}  // namespace plcp
