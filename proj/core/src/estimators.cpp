#include "plcp/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "plcp/errors.hpp"
#include "plcp/replicate.hpp"
#include "plcp/tessellation.hpp"

namespace plcp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SeedSpec seed_for(const MonteCarloOptions& options, std::size_t i) {
  return {options.master_seed, static_cast<std::uint64_t>(i)};
}

void require_samples(const MonteCarloOptions& options) {
  if (options.n < 1) throw DomainError("at least one replication is required");
}

double nearest_distance(const Realization& real, std::size_t skip) {
  double best = kInf;
  for (std::size_t i = skip; i < real.points.size(); ++i) {
    best = std::min(best, norm2(real.points[i].position));
  }
  return std::sqrt(best);
}

double enlarged(double buffer, double obs_radius) {
  return buffer > 0.0 ? 2.0 * buffer : obs_radius;
}

}  // namespace

Ecdf::Ecdf(std::vector<double> samples) : values_(std::move(samples)) {
  for (double v : values_) {
    if (std::isnan(v)) throw DomainError("ECDF sample is NaN");
  }
  std::sort(values_.begin(), values_.end());
}

double Ecdf::operator()(double x) const {
  if (values_.empty()) return 0.0;
  const auto it = std::upper_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

double Ecdf::left_limit(double x) const {
  if (values_.empty()) return 0.0;
  const auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
}

MonteCarloEstimate summarize(std::span<const double> samples, std::uint64_t master_seed) {
  MonteCarloEstimate est;
  est.n = samples.size();
  est.master_seed = master_seed;
  if (samples.empty()) return est;
  double sum = 0.0;
  for (double v : samples) sum += v;
  est.mean = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double v : samples) ss += (v - est.mean) * (v - est.mean);
    const double variance = ss / static_cast<double>(samples.size() - 1);
    est.std_error = std::sqrt(variance / static_cast<double>(samples.size()));
  }
  return est;
}

double ks_distance(const Ecdf& ecdf, const std::function<double(double)>& cdf) {
  const auto values = ecdf.values();
  const auto n = static_cast<double>(values.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double f = std::isinf(values[i]) ? (values[i] > 0 ? 1.0 : 0.0) : cdf(values[i]);
    const double below = static_cast<double>(i) / n;
    const double at = static_cast<double>(j) / n;
    d = std::max({d, std::abs(at - f), std::abs(f - below)});
    i = j;
  }
  return d;
}

double dkw_bound(std::size_t n, double alpha) {
  if (n == 0) throw DomainError("DKW bound needs n >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double ks_threshold(std::size_t n) { return 2.0 * dkw_bound(n, 0.01); }

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;  // the alternating series is useless here and Q ~ 1
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * x * x);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

TwoSampleKs two_sample_ks(const Ecdf& a, const Ecdf& b) {
  if (a.size() == 0 || b.size() == 0) throw DomainError("two-sample KS needs nonempty samples");
  double d = 0.0;
  for (const Ecdf* sample : {&a, &b}) {
    for (double x : sample->values()) {
      d = std::max(d, std::abs(a(x) - b(x)));
    }
  }
  const auto n = static_cast<double>(a.size());
  const auto m = static_cast<double>(b.size());
  const double en = std::sqrt(n * m / (n + m));
  return {d, kolmogorov_survival((en + 0.12 + 0.11 / en) * d)};
}

Ecdf empirical_nn_cdf(const ModelParams& params, double obs_radius, double buffer,
                      const MonteCarloOptions& options) {
  require_samples(options);
  auto distances = run_replications(
      options.n,
      [&](std::size_t i) {
        return nearest_distance(sample_stationary(params, obs_radius, buffer, seed_for(options, i)),
                                0);
      },
      options.threads);
  return Ecdf(std::move(distances));
}

Ecdf empirical_nn_cdf_palm(const ModelParams& params, double obs_radius, double buffer,
                           const MonteCarloOptions& options) {
  require_samples(options);
  auto distances = run_replications(
      options.n,
      [&](std::size_t i) {
        return nearest_distance(sample_palm(params, obs_radius, buffer, seed_for(options, i)), 1);
      },
      options.threads);
  return Ecdf(std::move(distances));
}

MonteCarloEstimate empirical_laplace(const PlanarFunction& f, const ModelParams& params,
                                     double obs_radius, const MonteCarloOptions& options,
                                     bool palm, PalmAtom atom) {
  require_samples(options);
  if (!f.evaluator) throw DomainError("planar function has no evaluator");
  const auto samples = run_replications(
      options.n,
      [&](std::size_t i) {
        const SeedSpec seed = seed_for(options, i);
        const Realization real = palm ? sample_palm(params, obs_radius, 0.0, seed)
                                      : sample_stationary(params, obs_radius, 0.0, seed);
        const std::size_t first = palm && atom == PalmAtom::kExcluded ? 1 : 0;
        double total = 0.0;
        for (std::size_t k = first; k < real.points.size(); ++k) total += f(real.points[k].position);
        return std::exp(-total);
      },
      options.threads);
  MonteCarloEstimate est = summarize(samples, options.master_seed);
  if (f.support_radius > obs_radius) {
    est.warning = "test function support radius " + std::to_string(f.support_radius) +
                  " exceeds the observation radius " + std::to_string(obs_radius) +
                  "; points beyond it are ignored";
  }
  return est;
}

FacetDensityEstimate empirical_facet_densities(const ModelParams& params, double obs_radius,
                                               double buffer, double counting_radius,
                                               const MonteCarloOptions& options) {
  require_samples(options);
  if (!(counting_radius > 0.0) || counting_radius > obs_radius) {
    throw DomainError("counting radius must lie in (0, obs_radius]");
  }
  const double area = std::numbers::pi * counting_radius * counting_radius;
  struct PerReplication {
    double v = 0, e = 0, c = 0;
  };
  const auto per = run_replications(
      options.n,
      [&](std::size_t i) {
        const Realization real =
            sample_stationary(params, obs_radius, buffer, seed_for(options, i));
        PerReplication out;
        if (real.points.empty()) return out;
        const FacetCounts counts = facet_counts(build_voronoi(real), counting_radius);
        out.v = static_cast<double>(counts.n_vertices) / area;
        out.e = static_cast<double>(counts.n_edges) / area;
        out.c = static_cast<double>(counts.n_cells) / area;
        return out;
      },
      options.threads);

  std::vector<double> v, e, c, euler;
  for (const PerReplication& p : per) {
    v.push_back(p.v);
    e.push_back(p.e);
    c.push_back(p.c);
    euler.push_back(p.v - p.e + p.c);
  }
  return {summarize(v, options.master_seed), summarize(e, options.master_seed),
          summarize(c, options.master_seed), summarize(euler, options.master_seed),
          counting_radius};
}

CellLaw empirical_cell_law(const ModelParams& params, double obs_radius, double buffer,
                           const MonteCarloOptions& options) {
  require_samples(options);
  struct PerReplication {
    CellExtent extent;
    bool retried = false;
  };
  const auto per = run_replications(
      options.n,
      [&](std::size_t i) {
        double b = buffer;
        for (int attempt = 0;; ++attempt) {
          try {
            const Realization real =
                align_typical_line(sample_palm(params, obs_radius, b, seed_for(options, i)));
            return PerReplication{typical_cell_extent(real), attempt > 0};
          } catch (const InsufficientWindow&) {
            if (attempt == kMaxWindowRetries) throw;
            b = enlarged(b, obs_radius);
          }
        }
      },
      options.threads);

  std::vector<double> s_plus, length, width, area;
  CellLaw law;
  for (const PerReplication& p : per) {
    s_plus.push_back(p.extent.s_plus);
    length.push_back(p.extent.length());
    width.push_back(p.extent.width);
    area.push_back(p.extent.area);
    if (p.retried) ++law.retries;
  }
  law.mean_length = summarize(length, options.master_seed);
  law.width = summarize(width, options.master_seed);
  law.area = summarize(area, options.master_seed);
  law.s_plus = Ecdf(std::move(s_plus));
  law.length = Ecdf(std::move(length));
  return law;
}

std::vector<MonteCarloEstimate> coupled_width_sweep(const ModelParams& params,
                                                    std::span<const double> mus,
                                                    double obs_radius, double buffer,
                                                    const MonteCarloOptions& options) {
  require_samples(options);
  if (mus.empty()) throw DomainError("width sweep needs at least one intensity");
  if (!std::is_sorted(mus.begin(), mus.end())) {
    throw DomainError("width sweep intensities must be nondecreasing");
  }
  ModelParams base = params;
  base.mu = mus.front();
  const auto per = run_replications(
      options.n,
      [&](std::size_t i) {
        double b = buffer;
        for (int attempt = 0;; ++attempt) {
          try {
            std::vector<double> widths;
            Realization real = sample_palm(base, obs_radius, b, seed_for(options, i));
            for (std::size_t k = 0; k < mus.size(); ++k) {
              if (k > 0) real = densify(real, mus[k], k);
              widths.push_back(typical_cell_extent(align_typical_line(real)).width);
            }
            return widths;
          } catch (const InsufficientWindow&) {
            if (attempt == kMaxWindowRetries) throw;
            b = enlarged(b, obs_radius);
          }
        }
      },
      options.threads);

  std::vector<MonteCarloEstimate> out;
  for (std::size_t k = 0; k < mus.size(); ++k) {
    std::vector<double> column;
    column.reserve(per.size());
    for (const auto& widths : per) column.push_back(widths[k]);
    out.push_back(summarize(column, options.master_seed));
  }
  return out;
}

std::vector<std::vector<double>> empirical_disk_counts(const ModelParams& params,
                                                       std::span<const Point2> centers,
                                                       double radius, double obs_radius,
                                                       const MonteCarloOptions& options) {
  require_samples(options);
  for (const Point2& c : centers) {
    if (norm(c) + radius > obs_radius) {
      throw DomainError("counting disk leaves the observation window");
    }
  }
  const auto per = run_replications(
      options.n,
      [&](std::size_t i) {
        const Realization real = sample_stationary(params, obs_radius, 0.0, seed_for(options, i));
        std::vector<double> counts;
        for (const Point2& c : centers) {
          counts.push_back(static_cast<double>(count_in_disk(real, c, radius)));
        }
        return counts;
      },
      options.threads);
  std::vector<std::vector<double>> out(centers.size());
  for (const auto& counts : per) {
    for (std::size_t k = 0; k < centers.size(); ++k) out[k].push_back(counts[k]);
  }
  return out;
}

MonteCarloEstimate empirical_density(const ModelParams& params, double window_radius,
                                     const MonteCarloOptions& options) {
  require_samples(options);
  const double area = std::numbers::pi * window_radius * window_radius;
  const auto per = run_replications(
      options.n,
      [&](std::size_t i) {
        const Realization real =
            sample_stationary(params, window_radius, 0.0, seed_for(options, i));
        return static_cast<double>(real.points.size()) / area;
      },
      options.threads);
  return summarize(per, options.master_seed);
}

std::size_t empirical_gqp_census(const ModelParams& params, double obs_radius, double buffer,
                                 const MonteCarloOptions& options) {
  require_samples(options);
  const auto per = run_replications(
      options.n,
      [&](std::size_t i) {
        const Realization real =
            sample_stationary(params, obs_radius, buffer, seed_for(options, i));
        return real.points.empty() ? std::size_t{0} : gqp_census(real);
      },
      options.threads);
  std::size_t total = 0;
  for (std::size_t c : per) total += c;
  return total;
}

}  // namespace plcp
