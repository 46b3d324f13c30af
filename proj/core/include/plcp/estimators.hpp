#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "plcp/analytics.hpp"
#include "plcp/sampler.hpp"

namespace plcp {

/// Empirical distribution function of a sample.
class Ecdf {
 public:
  Ecdf() = default;
  explicit Ecdf(std::vector<double> samples);

  /// Fraction of samples <= x.
  double operator()(double x) const;
  /// Fraction of samples < x.
  double left_limit(double x) const;

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const Ecdf&, const Ecdf&) = default;

 private:
  std::vector<double> values_;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::uint64_t master_seed = 0;
  /// Non-empty when the estimate is known to be biased (e.g. truncation).
  std::string warning;
};

/// Sample mean and standard error of the mean.
MonteCarloEstimate summarize(std::span<const double> samples, std::uint64_t master_seed);

/// Settings shared by the Monte Carlo estimators.
struct MonteCarloOptions {
  std::size_t n = 1000;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;  // 0: all hardware threads
};

/// sup_x |ECDF(x) - cdf(x)|, checked on both sides of every jump.
double ks_distance(const Ecdf& ecdf, const std::function<double(double)>& cdf);

/// Dvoretzky-Kiefer-Wolfowitz radius: P(sup|ECDF - F| > eps) <= alpha for
/// eps = sqrt(ln(2 / alpha) / (2 n)).
double dkw_bound(std::size_t n, double alpha = 0.01);

/// KS acceptance threshold for an analytic comparison: the 99% DKW radius with
/// a factor 2 slack for quadrature error.
double ks_threshold(std::size_t n);

/// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^(j-1) exp(-2 j^2 x^2).
double kolmogorov_survival(double x);

struct TwoSampleKs {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample KS statistic with its asymptotic p-value.
TwoSampleKs two_sample_ks(const Ecdf& a, const Ecdf& b);

/// Distance from the origin to the nearest point of each of n stationary
/// realizations (+inf when the simulation disk holds no point).
Ecdf empirical_nn_cdf(const ModelParams& params, double obs_radius, double buffer,
                      const MonteCarloOptions& options);

/// Same over Palm realizations, excluding the typical point itself.
Ecdf empirical_nn_cdf_palm(const ModelParams& params, double obs_radius, double buffer,
                           const MonteCarloOptions& options);

enum class PalmAtom { kExcluded, kIncluded };

/// Mean of exp(-sum f(X)) over stationary realizations in the disk of
/// obs_radius. With `palm`, realizations come from the Palm distribution and
/// the typical point is summed only when `atom` is kIncluded.
MonteCarloEstimate empirical_laplace(const PlanarFunction& f, const ModelParams& params,
                                     double obs_radius, const MonteCarloOptions& options,
                                     bool palm = false, PalmAtom atom = PalmAtom::kExcluded);

struct FacetDensityEstimate {
  MonteCarloEstimate vertices;
  MonteCarloEstimate edges;
  MonteCarloEstimate cells;
  /// vertices - edges + cells, estimated per replication.
  MonteCarloEstimate euler;
  double counting_radius = 0.0;
};

/// Minus-sampling facet densities over n stationary realizations.
FacetDensityEstimate empirical_facet_densities(const ModelParams& params, double obs_radius,
                                               double buffer, double counting_radius,
                                               const MonteCarloOptions& options);

struct CellLaw {
  Ecdf s_plus;
  Ecdf length;
  MonteCarloEstimate mean_length;
  MonteCarloEstimate width;
  MonteCarloEstimate area;
  /// Replications that needed a larger window than the initial buffer.
  std::size_t retries = 0;
};

/// Window enlargements attempted (each doubling the buffer) before a typical
/// cell is reported as uncertifiable.
inline constexpr int kMaxWindowRetries = 3;

/// Typical-cell statistics over n Palm realizations aligned with the x-axis.
CellLaw empirical_cell_law(const ModelParams& params, double obs_radius, double buffer,
                           const MonteCarloOptions& options);

/// Mean typical-cell width for increasing intensities on one coupled
/// probability space: each replication is densified from mus[0] upward.
std::vector<MonteCarloEstimate> coupled_width_sweep(const ModelParams& params,
                                                    std::span<const double> mus,
                                                    double obs_radius, double buffer,
                                                    const MonteCarloOptions& options);

/// Point counts in the unit-free disks (center, radius), one sample per
/// replication per disk. Every disk must lie inside the observation window.
std::vector<std::vector<double>> empirical_disk_counts(const ModelParams& params,
                                                       std::span<const Point2> centers,
                                                       double radius, double obs_radius,
                                                       const MonteCarloOptions& options);

/// Points per unit area in the disk of `window_radius`.
MonteCarloEstimate empirical_density(const ModelParams& params, double window_radius,
                                     const MonteCarloOptions& options);

/// Total cocircular Delaunay certificates over n stationary realizations.
std::size_t empirical_gqp_census(const ModelParams& params, double obs_radius, double buffer,
                                 const MonteCarloOptions& options);

}  // namespace plcp
