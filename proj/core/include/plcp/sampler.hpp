#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "plcp/geometry.hpp"
#include "plcp/rng.hpp"

namespace plcp {

enum class Orientation { kIsotropic, kManhattan };

std::string_view to_string(Orientation o);
Orientation parse_orientation(std::string_view text);

struct ModelParams {
  double lambda_l = 1.0;  // lines per unit length
  double mu = 1.0;        // points per unit length of line
  Orientation orientation = Orientation::kIsotropic;

  /// Throws DomainError unless both intensities are positive and finite.
  void validate() const;
};

/// A vehicle: its position and where it sits on the road process.
struct CoxPoint {
  Point2 position;
  std::size_t line_index = 0;
  double t = 0.0;
};

/// One sample of the Cox process in the disk of radius `sim_radius`.
///
/// Under the Palm distribution lines[0] is the typical line (r = 0) and
/// points[0] the typical point at the origin.
struct Realization {
  ModelParams params;
  SeedSpec seed;
  std::vector<LineParams> lines;
  std::vector<CoxPoint> points;
  double sim_radius = 0.0;
  double obs_radius = 0.0;
  bool palm = false;

  /// Index of the first line that belongs to the stationary part.
  std::size_t first_stationary_line() const { return palm ? 1 : 0; }
};

/// Line process in the disk of radius `radius`.
///
/// Lines are generated in increasing |r| from a rate-2*lambda_l Poisson process
/// on [0, inf), so the lines of a smaller disk are always a prefix of the lines
/// of a larger one drawn with the same seed.
std::vector<LineParams> sample_plp(const ModelParams& params, double radius, SeedSpec seed);

/// Poisson(mu) points on the chords of `lines` inside the disk.
///
/// Each line has its own stream (keyed by its position in `lines`) and points
/// are generated outward from t = 0, so enlarging the disk only appends points.
/// Within a line the points are ordered by increasing t. `line_index_offset`
/// is added to the stored line indices.
std::vector<CoxPoint> sample_cox(std::span<const LineParams> lines, double mu, double radius,
                                 SeedSpec seed, std::size_t line_index_offset = 0);

/// Default edge-effect buffer: the largest of the query radius, four mean
/// distances to the nearest line and four typical inter-point spacings.
double default_buffer(const ModelParams& params, double max_query_radius = 0.0);

Realization sample_stationary(const ModelParams& params, double obs_radius, double buffer,
                              SeedSpec seed);

/// Palm version: the stationary realization of the same seed plus a typical
/// line through the origin carrying its own Poisson points and the origin atom.
/// The typical line's angle follows the orientation law.
Realization sample_palm(const ModelParams& params, double obs_radius, double buffer,
                        SeedSpec seed);

/// Adds independent Poisson(mu_new - mu) points to every line, so the result is
/// a realization with intensity mu_new coupled to the input. `level` selects
/// the increment stream; successive densifications must use distinct levels.
Realization densify(const Realization& real, double mu_new, std::uint64_t level);

/// Rotates the whole realization about the origin. Point positions are
/// recomputed from their (line, t) coordinates.
Realization rotate_realization(const Realization& real, double angle);

/// Rotates a Palm realization so that its typical line is the x-axis.
Realization align_typical_line(const Realization& real);

/// Number of points with ||x - center|| <= radius.
std::size_t count_in_disk(const Realization& real, Point2 center, double radius);

}  // namespace plcp
