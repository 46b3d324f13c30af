#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "plcp/errors.hpp"
#include "plcp/geometry.hpp"

namespace plcp {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Geometry, LinePointSatisfiesLineEquation) {
  const LineParams line = make_line(1.5, 0.7);
  for (double t : {-3.0, 0.0, 0.25, 10.0}) {
    const Point2 p = line_point(line, t);
    EXPECT_NEAR(distance_to_line(p, line), 0.0, 1e-13);
    EXPECT_NEAR(line_coordinate(line, p), t, 1e-13);
  }
  // t = 0 is the foot of the perpendicular, at distance |r|.
  EXPECT_NEAR(norm(line_point(line, 0.0)), 1.5, 1e-14);
}

TEST(Geometry, CanonicalizeKeepsTheSameLine) {
  for (double theta : {-7.0, -kPi, -0.3, 0.0, 2.0, kPi, 4.0, 10.0}) {
    bool flipped = false;
    const LineParams line = canonicalize(0.8, theta, flipped);
    EXPECT_GE(line.theta, 0.0);
    EXPECT_LT(line.theta, kPi);
    // The original point at t = 2 is on the canonical line at t = +-2.
    const double c = std::cos(theta), s = std::sin(theta);
    const Point2 original{2.0 * c - 0.8 * s, 2.0 * s + 0.8 * c};
    EXPECT_NEAR(distance_to_line(original, line), 0.0, 1e-12);
    EXPECT_NEAR(line_coordinate(line, original), flipped ? -2.0 : 2.0, 1e-12);
  }
}

TEST(Geometry, HalfTurnFlipsSign) {
  const LineParams line = make_line(1.0, kPi + 0.5);
  EXPECT_DOUBLE_EQ(line.r, -1.0);
  EXPECT_NEAR(line.theta, 0.5, 1e-15);
}

TEST(Geometry, DistanceToLine) {
  EXPECT_DOUBLE_EQ(distance_to_line({0.0, 0.0}, make_line(-2.5, 1.0)), 2.5);
  // Horizontal line y = 1.
  EXPECT_DOUBLE_EQ(distance_to_line({5.0, 3.0}, make_line(1.0, 0.0)), 2.0);
}

TEST(Geometry, ChordHalfLength) {
  EXPECT_DOUBLE_EQ(chord_half_length(0.0, 2.0), 2.0);
  EXPECT_DOUBLE_EQ(chord_half_length(2.0, 2.0), 0.0);
  EXPECT_NEAR(chord_half_length(-0.6, 1.0), 0.8, 1e-15);
  EXPECT_THROW(chord_half_length(2.5, 2.0), DomainError);
}

TEST(Geometry, Rotate) {
  const Point2 p = rotate({1.0, 0.0}, kPi / 2.0);
  EXPECT_NEAR(p.x, 0.0, 1e-15);
  EXPECT_NEAR(p.y, 1.0, 1e-15);
}

TEST(Geometry, DiskWindow) {
  const DiskWindow w(2.0);
  EXPECT_TRUE(w.contains({2.0, 0.0}));
  EXPECT_FALSE(w.contains({1.5, 1.5}));
  EXPECT_NEAR(w.area(), 4.0 * kPi, 1e-14);
  EXPECT_THROW(DiskWindow(0.0), DomainError);
  EXPECT_THROW(DiskWindow(-1.0), DomainError);
}

}  // namespace
}  // namespace plcp
