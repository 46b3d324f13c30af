#include "plcp_cli/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "plcp/errors.hpp"
#include "plcp/estimators.hpp"
#include "plcp/io.hpp"
#include "plcp/tessellation.hpp"

namespace plcp::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

class Writer {
 public:
  Writer(const ExperimentConfig& config, RunResult& result)
      : dir_(config.out_dir), metadata_(config_metadata(config)), result_(result) {
    fs::create_directories(dir_);
  }

  const Metadata& metadata() const { return metadata_; }

  std::ofstream open(const std::string& name) {
    const fs::path path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    result_.artifacts.push_back(path);
    return out;
  }

  void json(const std::string& name, Json fields) {
    std::string meta;
    for (const auto& [k, v] : metadata_) meta += k + "=" + v + "\n";
    fields["metadata"] = meta;
    open(name) << fields.dump(2) << '\n';
  }

 private:
  fs::path dir_;
  Metadata metadata_;
  RunResult& result_;
};

void check(RunResult& result, bool ok, const std::string& what) {
  result.checks.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  if (!ok) result.exit_code = kToleranceViolation;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

MonteCarloOptions mc_options(const ExperimentConfig& c) { return {c.n, c.seed, c.threads}; }

// Writes r,F_empirical,F_analytic,abs_gap over the grid; returns the max gap.
double write_curve(Writer& w, const std::string& name, const Grid& grid, const Ecdf& ecdf,
                   const std::function<double(double)>& analytic) {
  std::vector<std::vector<double>> rows;
  double max_gap = 0.0;
  for (double r : grid.points()) {
    const double fe = ecdf(r);
    const double fa = analytic(r);
    max_gap = std::max(max_gap, std::abs(fe - fa));
    rows.push_back({r, fe, fa, std::abs(fe - fa)});
  }
  auto out = w.open(name);
  write_table_csv(out, {"r", "F_empirical", "F_analytic", "abs_gap"}, rows, w.metadata());
  return max_gap;
}

Realization single_realization(const ExperimentConfig& c) {
  const SeedSpec seed{c.seed, c.replication};
  const double buffer = c.resolved_buffer();
  return c.palm ? sample_palm(c.params, c.obs_radius, buffer, seed)
                : sample_stationary(c.params, c.obs_radius, buffer, seed);
}

void run_sample(const ExperimentConfig& c, Writer& w) {
  const Realization real = single_realization(c);
  Metadata metadata = w.metadata();
  for (auto& [k, v] : realization_metadata(real)) {
    if (std::none_of(metadata.begin(), metadata.end(), [&](const auto& e) { return e.first == k; })) {
      metadata.emplace_back(k, v);
    }
  }
  auto out = w.open("sample.csv");
  write_realization_csv(out, real, metadata);
}

void run_render(const ExperimentConfig& c, Writer& w) {
  const Realization real = single_realization(c);
  const Tessellation tess = build_voronoi(real);
  {
    auto out = w.open("render.svg");
    render_svg(out, real, &tess, c.view_radius, w.metadata());
  }
  auto out = w.open("render-tessellation.csv");
  write_tessellation_csv(out, tess, w.metadata());
}

void run_nn(const ExperimentConfig& c, Writer& w, RunResult& result, bool palm) {
  const double buffer = c.resolved_buffer(c.grid.max);
  const auto analytic = [&](double r) {
    return palm ? nn_cdf_palm(r, c.params, c.quad) : nn_cdf(r, c.params, c.quad);
  };
  analytic(1.0);  // fail early on unsupported analytics
  const Ecdf ecdf = palm ? empirical_nn_cdf_palm(c.params, c.obs_radius, buffer, mc_options(c))
                         : empirical_nn_cdf(c.params, c.obs_radius, buffer, mc_options(c));
  const double max_gap = write_curve(w, c.experiment + ".csv", c.grid, ecdf, analytic);
  const double ks = ks_distance(ecdf, analytic);
  const double threshold = ks_threshold(c.n);
  w.json(c.experiment + ".json", {{"experiment", c.experiment},
                                  {"ks_statistic", ks},
                                  {"ks_threshold", threshold},
                                  {"max_abs_gap", max_gap},
                                  {"n", c.n},
                                  {"seed", c.seed},
                                  {"sim_radius", c.obs_radius + buffer}});
  check(result, ks <= threshold, "KS " + fixed(ks) + " <= " + fixed(threshold));
}

void run_laplace(const ExperimentConfig& c, Writer& w, RunResult& result) {
  const RadialFunction f =
      c.function == "gaussian"
          ? gaussian_bump(c.scale, c.width)
          : path_loss(c.alpha, c.scale, c.exclusion, c.resolved_cutoff());
  const Evaluation analytic = c.palm ? laplace_palm_radial_eval(f, c.params, c.quad)
                                     : laplace_functional_radial_eval(f, c.params, c.quad);
  const MonteCarloEstimate mc =
      empirical_laplace(as_planar(f), c.params, c.obs_radius, mc_options(c), c.palm);
  const double gap = std::abs(mc.mean - analytic.value);
  const double z = mc.std_error > 0.0 ? gap / mc.std_error : (gap == 0.0 ? 0.0 : INFINITY);
  Json fields{{"experiment", c.experiment},
              {"function", c.function},
              {"palm", c.palm},
              {"estimate", mc.mean},
              {"stderr", mc.std_error},
              {"analytic", analytic.value},
              {"quadrature_error", analytic.error},
              {"z_score", z},
              {"n", mc.n},
              {"seed", mc.master_seed}};
  if (!mc.warning.empty()) fields["warning"] = mc.warning;
  w.json("laplace.json", std::move(fields));
  check(result, gap <= 3.0 * mc.std_error + analytic.error,
        "|MC - analytic| " + fixed(gap) + " <= 3 stderr " + fixed(3.0 * mc.std_error));
}

void run_facets(const ExperimentConfig& c, Writer& w, RunResult& result) {
  const double counting = c.resolved_counting_radius();
  const FacetDensityEstimate est = empirical_facet_densities(
      c.params, c.obs_radius, c.resolved_buffer(), counting, mc_options(c));
  const FacetDensities target = facet_densities(c.params);
  w.json("facets.json", {{"experiment", c.experiment},
                         {"vertices", est.vertices.mean},
                         {"vertices_stderr", est.vertices.std_error},
                         {"edges", est.edges.mean},
                         {"edges_stderr", est.edges.std_error},
                         {"cells", est.cells.mean},
                         {"cells_stderr", est.cells.std_error},
                         {"euler", est.euler.mean},
                         {"euler_stderr", est.euler.std_error},
                         {"vertices_target", target.vertices},
                         {"edges_target", target.edges},
                         {"cells_target", target.cells},
                         {"counting_radius", counting},
                         {"n", c.n},
                         {"seed", c.seed}});
  const std::pair<const MonteCarloEstimate*, double> pairs[] = {
      {&est.vertices, target.vertices}, {&est.edges, target.edges}, {&est.cells, target.cells}};
  const char* names[] = {"vertices", "edges", "cells"};
  for (int k = 0; k < 3; ++k) {
    const auto [e, t] = pairs[k];
    const double allowed = std::max(0.03 * t, 3.0 * e->std_error);
    check(result, std::abs(e->mean - t) <= allowed,
          std::string(names[k]) + " " + fixed(e->mean) + " vs " + fixed(t));
  }
  check(result, std::abs(est.euler.mean) <= 3.0 * est.euler.std_error,
        "euler " + fixed(est.euler.mean) + " within 3 stderr of 0");
}

void run_typical_cell(const ExperimentConfig& c, Writer& w, RunResult& result) {
  const double lambda = c.params.lambda_l;
  const double buffer = c.resolved_buffer();
  const CellLaw law = empirical_cell_law(c.params, c.obs_radius, buffer, mc_options(c));
  const auto half = [lambda](double l) { return half_length_cdf(l, lambda); };
  const auto length = [&](double l) {
    return c.length_law == "erlang" ? cell_length_cdf(l, lambda)
                                    : segment_length_cdf(l, lambda, c.quad);
  };
  write_curve(w, "typical-cell-s-plus.csv", c.grid, law.s_plus, half);
  write_curve(w, "typical-cell-length.csv", c.grid, law.length, length);

  const std::vector<MonteCarloEstimate> widths =
      coupled_width_sweep(c.params, c.mu_sweep, c.obs_radius, buffer, mc_options(c));
  Json sweep = Json::array();
  bool decreasing = true;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    sweep.push_back({{"mu", c.mu_sweep[k]}, {"width", widths[k].mean},
                     {"stderr", widths[k].std_error}});
    if (k > 0 && !(widths[k].mean < widths[k - 1].mean)) decreasing = false;
  }
  const double ks_half = ks_distance(law.s_plus, half);
  const double ks_length = ks_distance(law.length, length);
  const double threshold = ks_threshold(c.n);
  const double mean_gap = std::abs(law.mean_length.mean - 1.0 / lambda);
  Json fields{{"experiment", c.experiment},
              {"ks_s_plus", ks_half},
              {"ks_length", ks_length},
              {"length_law", c.length_law},
              {"ks_threshold", threshold},
              {"mean_length", law.mean_length.mean},
              {"mean_length_stderr", law.mean_length.std_error},
              {"mean_width", law.width.mean},
              {"mean_area", law.area.mean},
              {"window_retries", law.retries},
              {"n", c.n},
              {"seed", c.seed}};
  // Flat object: the sweep is flattened into width_mu_<mu> fields.
  for (std::size_t k = 0; k < widths.size(); ++k) {
    fields["width_mu_" + format_double(c.mu_sweep[k])] = widths[k].mean;
    fields["width_mu_" + format_double(c.mu_sweep[k]) + "_stderr"] = widths[k].std_error;
  }
  w.json("typical-cell.json", std::move(fields));
  check(result, ks_half <= threshold, "KS(S+) " + fixed(ks_half) + " <= " + fixed(threshold));
  check(result, ks_length <= threshold,
        "KS(|S|, " + c.length_law + ") " + fixed(ks_length) + " <= " + fixed(threshold));
  check(result, mean_gap <= 3.0 * law.mean_length.std_error,
        "mean |S| " + fixed(law.mean_length.mean) + " within 3 stderr of " + fixed(1.0 / lambda));
  check(result, decreasing, "mean width strictly decreasing over mu_sweep");
}

void run_gqp(const ExperimentConfig& c, Writer& w, RunResult& result) {
  const std::size_t census =
      empirical_gqp_census(c.params, c.obs_radius, c.resolved_buffer(), mc_options(c));
  w.json("gqp.json", {{"experiment", c.experiment},
                      {"cocircular_quadruples", census},
                      {"n", c.n},
                      {"seed", c.seed}});
  check(result, census == 0, "cocircular quadruples " + std::to_string(census) + " == 0");
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
  config.params.validate();
  config.quad.validate();
  RunResult result;
  Writer w(config, result);
  const std::string& e = config.experiment;
  if (e == "sample") {
    run_sample(config, w);
  } else if (e == "render") {
    run_render(config, w);
  } else if (e == "nn-cdf" || e == "nn-cdf-palm") {
    run_nn(config, w, result, e == "nn-cdf-palm");
  } else if (e == "laplace") {
    run_laplace(config, w, result);
  } else if (e == "facets") {
    run_facets(config, w, result);
  } else if (e == "typical-cell") {
    run_typical_cell(config, w, result);
  } else if (e == "gqp") {
    run_gqp(config, w, result);
  } else {
    throw ConfigError("experiment", "unknown experiment '" + e + "'");
  }
  return result;
}

int run_guarded(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  try {
    const RunResult result = run(config);
    for (const std::string& line : result.checks) log << line << '\n';
    for (const auto& path : result.artifacts) log << "wrote " << path.string() << '\n';
    return result.exit_code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnsupportedAnalytics& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsage;
  } catch (const QuadratureError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const TruncationError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const InsufficientWindow& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const DegenerateInput& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumericFailure;
  } catch (const fs::filesystem_error& e) {
    err << "output error: " << e.what() << '\n';
    return kUsage;
  }
}

Metadata read_artifact_metadata(const fs::path& artifact) {
  std::ifstream in(artifact, std::ios::binary);
  if (!in) throw ConfigError("artifact", "cannot open " + artifact.string());
  if (artifact.extension() == ".json") {
    const Json doc = Json::parse(in);
    if (!doc.contains("metadata")) throw ConfigError("artifact", "no metadata field");
    Metadata metadata;
    std::istringstream lines(doc["metadata"].get<std::string>());
    std::string line;
    while (std::getline(lines, line)) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) metadata.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return metadata;
  }
  return read_metadata(in);
}

int replay(const fs::path& artifact, const std::optional<std::string>& out_dir,
           std::ostream& log, std::ostream& err) {
  ExperimentConfig config;
  try {
    config = config_from_metadata(read_artifact_metadata(artifact));
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "cannot read metadata: " << e.what() << '\n';
    return kUsage;
  }
  if (out_dir) config.out_dir = *out_dir;
  return run_guarded(config, log, err);
}

}  // namespace plcp::cli
