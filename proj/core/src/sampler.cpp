#include "plcp/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "plcp/errors.hpp"

namespace plcp {
namespace {

constexpr std::uint64_t kTypicalLineKey = std::numeric_limits<std::uint64_t>::max();

double draw_angle(Orientation orientation, Engine& engine) {
  if (orientation == Orientation::kManhattan) {
    std::bernoulli_distribution vertical(0.5);
    return vertical(engine) ? std::numbers::pi / 2.0 : 0.0;
  }
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  return angle(engine);
}

// Poisson(rate) points on the chord |t| <= half_length, generated outward from
// t = 0 on each side with that side's engine, appended in increasing t.
// Excludes t = 0 itself.
void append_line_points(const SeedSpec& seed, Stream stream, std::uint64_t key,
                        std::uint64_t level, const LineParams& line, std::size_t line_index,
                        double rate, double half_length, std::vector<CoxPoint>& out) {
  std::exponential_distribution<double> gap(rate);
  Engine negative = make_engine(seed, stream, key, level, Side::kNegative);
  const std::size_t first = out.size();
  for (double t = gap(negative); t <= half_length; t += gap(negative)) {
    out.push_back({line_point(line, -t), line_index, -t});
  }
  std::reverse(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
  Engine positive = make_engine(seed, stream, key, level, Side::kPositive);
  for (double t = gap(positive); t <= half_length; t += gap(positive)) {
    out.push_back({line_point(line, t), line_index, t});
  }
}

void require_positive_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw DomainError("simulation radius must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(Orientation o) {
  return o == Orientation::kManhattan ? "manhattan" : "isotropic";
}

Orientation parse_orientation(std::string_view text) {
  if (text == "isotropic") return Orientation::kIsotropic;
  if (text == "manhattan") return Orientation::kManhattan;
  throw DomainError("unknown orientation '" + std::string(text) + "'");
}

void ModelParams::validate() const {
  if (!(lambda_l > 0.0) || !std::isfinite(lambda_l)) {
    throw DomainError("lambda_l must be positive and finite");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw DomainError("mu must be positive and finite");
  }
}

std::vector<LineParams> sample_plp(const ModelParams& params, double radius, SeedSpec seed) {
  params.validate();
  require_positive_radius(radius);
  Engine engine = make_engine(seed, Stream::kLines);
  std::exponential_distribution<double> gap(2.0 * params.lambda_l);
  std::bernoulli_distribution negative(0.5);

  std::vector<LineParams> lines;
  for (double distance = gap(engine); distance <= radius; distance += gap(engine)) {
    const double r = negative(engine) ? -distance : distance;
    const double theta = draw_angle(params.orientation, engine);
    lines.push_back({r, theta});
  }
  return lines;
}

std::vector<CoxPoint> sample_cox(std::span<const LineParams> lines, double mu, double radius,
                                 SeedSpec seed, std::size_t line_index_offset) {
  if (!(mu > 0.0)) throw DomainError("mu must be positive");
  require_positive_radius(radius);
  std::vector<CoxPoint> points;
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const double half = chord_half_length(lines[k].r, radius);
    append_line_points(seed, Stream::kLinePoints, k, 0, lines[k], k + line_index_offset, mu, half,
                       points);
  }
  return points;
}

double default_buffer(const ModelParams& params, double max_query_radius) {
  params.validate();
  const double line_margin = 4.0 / (2.0 * params.lambda_l);
  const double point_margin = 4.0 / std::sqrt(std::numbers::pi * params.mu * params.lambda_l);
  return std::max({max_query_radius, line_margin, point_margin});
}

Realization sample_stationary(const ModelParams& params, double obs_radius, double buffer,
                              SeedSpec seed) {
  if (!(obs_radius > 0.0)) throw DomainError("obs_radius must be positive");
  if (!(buffer >= 0.0)) throw DomainError("buffer must be nonnegative");
  Realization real;
  real.params = params;
  real.seed = seed;
  real.obs_radius = obs_radius;
  real.sim_radius = obs_radius + buffer;
  real.lines = sample_plp(params, real.sim_radius, seed);
  real.points = sample_cox(real.lines, params.mu, real.sim_radius, seed);
  return real;
}

Realization sample_palm(const ModelParams& params, double obs_radius, double buffer,
                        SeedSpec seed) {
  if (!(obs_radius > 0.0)) throw DomainError("obs_radius must be positive");
  if (!(buffer >= 0.0)) throw DomainError("buffer must be nonnegative");
  Realization real;
  real.params = params;
  real.seed = seed;
  real.obs_radius = obs_radius;
  real.sim_radius = obs_radius + buffer;
  real.palm = true;

  const std::vector<LineParams> stationary = sample_plp(params, real.sim_radius, seed);

  Engine engine = make_engine(seed, Stream::kTypicalLine);
  const LineParams typical{0.0, draw_angle(params.orientation, engine)};

  real.lines.reserve(stationary.size() + 1);
  real.lines.push_back(typical);
  real.lines.insert(real.lines.end(), stationary.begin(), stationary.end());

  real.points.push_back({Point2{0.0, 0.0}, 0, 0.0});
  append_line_points(seed, Stream::kTypicalLine, 0, 0, typical, 0, params.mu, real.sim_radius,
                     real.points);
  std::vector<CoxPoint> rest = sample_cox(stationary, params.mu, real.sim_radius, seed, 1);
  real.points.insert(real.points.end(), rest.begin(), rest.end());
  return real;
}

Realization densify(const Realization& real, double mu_new, std::uint64_t level) {
  if (!(mu_new >= real.params.mu)) {
    throw DomainError("densification requires mu_new >= mu");
  }
  Realization out = real;
  out.params.mu = mu_new;
  if (mu_new == real.params.mu) return out;
  const double extra = mu_new - real.params.mu;
  const std::size_t first = real.first_stationary_line();
  for (std::size_t i = 0; i < real.lines.size(); ++i) {
    const std::uint64_t key = i < first ? kTypicalLineKey : i - first;
    const double half = chord_half_length(real.lines[i].r, real.sim_radius);
    append_line_points(real.seed, Stream::kIncrement, key, level, real.lines[i], i, extra, half,
                       out.points);
  }
  return out;
}

Realization rotate_realization(const Realization& real, double angle) {
  Realization out = real;
  std::vector<bool> flipped(real.lines.size(), false);
  for (std::size_t i = 0; i < real.lines.size(); ++i) {
    bool flip = false;
    out.lines[i] = canonicalize(real.lines[i].r, real.lines[i].theta + angle, flip);
    flipped[i] = flip;
  }
  for (CoxPoint& p : out.points) {
    if (flipped[p.line_index]) p.t = -p.t;
    p.position = line_point(out.lines[p.line_index], p.t);
  }
  return out;
}

Realization align_typical_line(const Realization& real) {
  if (!real.palm || real.lines.empty()) {
    throw DomainError("align_typical_line requires a Palm realization");
  }
  return rotate_realization(real, -real.lines.front().theta);
}

std::size_t count_in_disk(const Realization& real, Point2 center, double radius) {
  const double r2 = radius * radius;
  return static_cast<std::size_t>(std::count_if(
      real.points.begin(), real.points.end(),
      [&](const CoxPoint& p) { return norm2(p.position - center) <= r2; }));
}

}  // namespace plcp
