#pragma once

#include "plcp/geometry.hpp"

namespace plcp::predicates {

/// Sign of the orientation determinant: +1 when (a, b, c) turn counterclockwise,
/// -1 clockwise, 0 collinear. Exact for all finite double inputs: a floating
/// point filter decides the easy cases and rational arithmetic the rest.
int orient2d(Point2 a, Point2 b, Point2 c);

/// Sign of the in-circle determinant for counterclockwise (a, b, c): +1 when d
/// lies strictly inside their circumcircle, -1 strictly outside, 0 on it.
/// Exact in the same sense as orient2d.
int incircle(Point2 a, Point2 b, Point2 c, Point2 d);

/// Rational-arithmetic evaluations without the filter.
int orient2d_exact(Point2 a, Point2 b, Point2 c);
int incircle_exact(Point2 a, Point2 b, Point2 c, Point2 d);

/// Circumcentre of a non-degenerate triangle (plain floating point).
Point2 circumcenter(Point2 a, Point2 b, Point2 c);

}  // namespace plcp::predicates
