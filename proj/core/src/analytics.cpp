#include "plcp/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "plcp/errors.hpp"

namespace plcp {
namespace {

constexpr double kPi = std::numbers::pi;
// Inner integrals of nested rules run this much tighter than the outer one.
constexpr double kInnerTightening = 1e-2;

// 1 - exp(-x) without cancellation for small x.
double one_minus_exp(double x) { return -std::expm1(-x); }

void require_isotropic(const ModelParams& params) {
  params.validate();
  if (params.orientation != Orientation::kIsotropic) {
    throw UnsupportedAnalytics("closed-form statistics are available for isotropic lines only");
  }
}

double require_support(double support_radius) {
  if (!std::isfinite(support_radius)) {
    throw TruncationError(
        "test function has unbounded support; give it a finite support radius",
        std::numeric_limits<double>::infinity());
  }
  if (!(support_radius >= 0.0)) throw DomainError("support radius must be nonnegative");
  return support_radius;
}

QuadResult checked(QuadResult result, const char* what) {
  if (!result.converged) {
    throw QuadratureError(std::string(what) + ": quadrature did not converge (error estimate " +
                          std::to_string(result.error) + ")");
  }
  return result;
}

// Arc-coordinate breakpoints where a chord at distance |r| crosses the given radii.
std::vector<double> chord_breakpoints(const std::vector<double>& radii, double r,
                                      bool symmetric) {
  std::vector<double> out;
  for (double k : radii) {
    if (k > std::abs(r)) {
      const double t = std::sqrt(k * k - r * r);
      out.push_back(t);
      if (symmetric) out.push_back(-t);
    }
  }
  return out;
}

// Non-smooth radii plus a doubling sequence up to the support, so that long
// ranges get geometrically graded panels and features near the origin are not
// missed by the first coarse rules.
std::vector<double> graded_radii(const std::vector<double>& breakpoints, double support) {
  std::vector<double> out = breakpoints;
  double base = 1.0;
  for (double b : breakpoints) {
    if (b > 0.0) base = std::min(base, b);
  }
  for (double k = 2.0 * base; k < support; k *= 2.0) out.push_back(k);
  return out;
}

// Angles phi with support * sin(phi) = k, for the substitution r = support * sin(phi).
std::vector<double> angle_breakpoints(const std::vector<double>& radii, double support,
                                      bool symmetric) {
  std::vector<double> out;
  for (double k : radii) {
    if (k > 0.0 && k < support) {
      const double phi = std::asin(k / support);
      out.push_back(phi);
      if (symmetric) out.push_back(-phi);
    }
  }
  return out;
}

// exp(-c * J) with the error of J propagated to first order.
Evaluation exp_of(double c, const QuadResult& integral) {
  const double value = std::exp(-c * integral.value);
  return {value, value * c * integral.error};
}

}  // namespace

RadialFunction gaussian_bump(double scale, double width, double tail) {
  if (!(scale >= 0.0) || !(width > 0.0) || !(tail > 0.0)) {
    throw DomainError("gaussian_bump needs scale >= 0, width > 0, tail > 0");
  }
  // Planar mass beyond R: pi scale width^2 exp(-(R / width)^2).
  const double support =
      width * std::sqrt(std::max(0.0, std::log(std::numbers::pi * scale * width * width / tail)));
  return {[scale, width](double rho) {
            const double u = rho / width;
            return scale * std::exp(-u * u);
          },
          support,
          {}};
}

RadialFunction path_loss(double alpha, double scale, double exclusion, double cutoff,
                         double tail) {
  if (!(alpha > 0.0) || !(scale > 0.0) || !(exclusion > 0.0)) {
    throw DomainError("path loss needs alpha > 0, scale > 0 and an exclusion radius > 0");
  }
  double support = cutoff;
  if (!std::isfinite(cutoff)) {
    if (!(alpha > 2.0)) throw DomainError("path loss with infinite support needs alpha > 2");
    if (!(tail > 0.0)) throw DomainError("tail must be positive");
    // Planar mass beyond R: 2 pi scale R^(2 - alpha) / (alpha - 2).
    const double mass = 2.0 * std::numbers::pi * scale / ((alpha - 2.0) * tail);
    support = std::max(exclusion, std::pow(mass, 1.0 / (alpha - 2.0)));
  } else if (!(cutoff > exclusion)) {
    throw DomainError("path loss cutoff must exceed the exclusion radius");
  }
  const double cap = scale * std::pow(exclusion, -alpha);
  return {[alpha, scale, exclusion, cap](double rho) {
            return rho < exclusion ? cap : scale * std::pow(rho, -alpha);
          },
          support,
          {exclusion}};
}

RadialFunction hard_wall(double height, double radius) {
  if (!(height >= 0.0) || !(radius > 0.0)) {
    throw DomainError("hard wall needs height >= 0 and radius > 0");
  }
  return {[height](double) { return height; }, radius, {}};
}

PlanarFunction as_planar(const RadialFunction& f) {
  return {[g = f.evaluator](Point2 p) { return g(norm(p)); }, f.support_radius, f.breakpoints};
}

PlanarFunction shifted(const PlanarFunction& f, Point2 center) {
  return {[g = f.evaluator, center](Point2 p) { return g(p - center); },
          f.support_radius + norm(center),
          {}};
}

Evaluation nn_cdf_eval(double r, const ModelParams& params, const QuadratureSpec& quad) {
  require_isotropic(params);
  quad.validate();
  if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("nn_cdf needs a finite r >= 0");
  if (r == 0.0) return {0.0, 0.0};
  // u = r sin(phi) removes the square-root singularity at u = r.
  const double mu = params.mu;
  const QuadResult integral = checked(integrate(
                                          [r, mu](double phi) {
                                            const double h = r * std::cos(phi);
                                            return h * one_minus_exp(2.0 * mu * h);
                                          },
                                          0.0, kPi / 2.0, quad),
                                      "nn_cdf");
  const double exponent = 2.0 * params.lambda_l * integral.value;
  return {one_minus_exp(exponent),
          std::exp(-exponent) * 2.0 * params.lambda_l * integral.error};
}

double nn_cdf(double r, const ModelParams& params, const QuadratureSpec& quad) {
  return nn_cdf_eval(r, params, quad).value;
}

Evaluation nn_cdf_palm_eval(double r, const ModelParams& params, const QuadratureSpec& quad) {
  const Evaluation stationary = nn_cdf_eval(r, params, quad);
  const double line_factor = std::exp(-2.0 * params.mu * r);
  return {1.0 - (1.0 - stationary.value) * line_factor, stationary.error * line_factor};
}

double nn_cdf_palm(double r, const ModelParams& params, const QuadratureSpec& quad) {
  return nn_cdf_palm_eval(r, params, quad).value;
}

Evaluation laplace_functional_radial_eval(const RadialFunction& f, const ModelParams& params,
                                          const QuadratureSpec& quad) {
  require_isotropic(params);
  quad.validate();
  if (!f.evaluator) throw DomainError("radial function has no evaluator");
  const double support = require_support(f.support_radius);
  if (support == 0.0) return {1.0, 0.0};
  const QuadratureSpec inner_quad = quad.tightened(kInnerTightening);
  const std::vector<double> radii = graded_radii(f.breakpoints, support);

  // Half-line transform of one line at distance r: int_0^c (1 - exp(-f~(sqrt(t^2 + r^2)))) dt.
  auto half_line = [&](double r) {
    const double c = std::sqrt(std::max(0.0, support * support - r * r));
    const std::vector<double> cuts = chord_breakpoints(radii, r, false);
    return checked(integrate([&](double t) { return one_minus_exp(f(std::hypot(t, r))); }, 0.0,
                             c, inner_quad, cuts),
                   "laplace_functional_radial (inner)")
        .value;
  };
  // r = support * sin(phi) smooths the chord-length endpoint behaviour.
  const std::vector<double> cuts = angle_breakpoints(radii, support, false);
  const QuadResult outer = checked(integrate(
                                       [&](double phi) {
                                         const double r = support * std::sin(phi);
                                         return support * std::cos(phi) *
                                                one_minus_exp(2.0 * params.mu * half_line(r));
                                       },
                                       0.0, kPi / 2.0, quad, cuts),
                                   "laplace_functional_radial");
  return exp_of(2.0 * params.lambda_l, outer);
}

double laplace_functional_radial(const RadialFunction& f, const ModelParams& params,
                                 const QuadratureSpec& quad) {
  return laplace_functional_radial_eval(f, params, quad).value;
}

Evaluation laplace_functional_eval(const PlanarFunction& f, const ModelParams& params,
                                   const QuadratureSpec& quad) {
  require_isotropic(params);
  quad.validate();
  if (!f.evaluator) throw DomainError("planar function has no evaluator");
  const double support = require_support(f.support_radius);
  if (support == 0.0) return {1.0, 0.0};
  const QuadratureSpec middle_quad = quad.tightened(kInnerTightening);
  const QuadratureSpec inner_quad = middle_quad.tightened(kInnerTightening);
  const std::vector<double> radii = graded_radii(f.breakpoints, support);

  // Full-line transform of the line (r, theta) restricted to the support disk.
  auto chord = [&](double r, double theta) {
    const double c = std::sqrt(std::max(0.0, support * support - r * r));
    const LineParams line{r, theta};
    const std::vector<double> cuts = chord_breakpoints(radii, r, true);
    return checked(integrate([&](double t) { return one_minus_exp(f(line_point(line, t))); }, -c,
                             c, inner_quad, cuts),
                   "laplace_functional (inner)")
        .value;
  };
  auto over_angles = [&](double r) {
    return checked(integrate([&](double theta) { return one_minus_exp(params.mu * chord(r, theta)); },
                             0.0, kPi, middle_quad),
                   "laplace_functional (middle)")
        .value;
  };
  const std::vector<double> cuts = angle_breakpoints(radii, support, true);
  const QuadResult outer = checked(integrate(
                                       [&](double phi) {
                                         return support * std::cos(phi) *
                                                over_angles(support * std::sin(phi));
                                       },
                                       -kPi / 2.0, kPi / 2.0, quad, cuts),
                                   "laplace_functional");
  return exp_of(params.lambda_l / kPi, outer);
}

double laplace_functional(const PlanarFunction& f, const ModelParams& params,
                          const QuadratureSpec& quad) {
  return laplace_functional_eval(f, params, quad).value;
}

Evaluation typical_line_factor(const PlanarFunction& f, const ModelParams& params,
                               const QuadratureSpec& quad) {
  require_isotropic(params);
  quad.validate();
  if (!f.evaluator) throw DomainError("planar function has no evaluator");
  const double support = require_support(f.support_radius);
  if (support == 0.0) return {1.0, 0.0};
  const QuadratureSpec inner_quad = quad.tightened(kInnerTightening);
  const std::vector<double> cuts =
      chord_breakpoints(graded_radii(f.breakpoints, support), 0.0, true);
  auto line_transform = [&](double theta) {
    const LineParams line{0.0, theta};
    const double integral =
        checked(integrate([&](double t) { return one_minus_exp(f(line_point(line, t))); },
                          -support, support, inner_quad, cuts),
                "typical_line_factor (inner)")
            .value;
    return std::exp(-params.mu * integral);
  };
  const QuadResult averaged =
      checked(integrate(line_transform, 0.0, kPi, quad), "typical_line_factor");
  return {averaged.value / kPi, averaged.error / kPi};
}

Evaluation typical_line_factor_radial(const RadialFunction& f, const ModelParams& params,
                                      const QuadratureSpec& quad) {
  require_isotropic(params);
  quad.validate();
  if (!f.evaluator) throw DomainError("radial function has no evaluator");
  const double support = require_support(f.support_radius);
  if (support == 0.0) return {1.0, 0.0};
  const QuadResult half = checked(
      integrate([&](double t) { return one_minus_exp(f(t)); }, 0.0, support, quad,
                graded_radii(f.breakpoints, support)),
      "typical_line_factor_radial");
  return exp_of(2.0 * params.mu, half);
}

Evaluation laplace_palm_eval(const PlanarFunction& f, const ModelParams& params,
                             const QuadratureSpec& quad) {
  const Evaluation base = laplace_functional_eval(f, params, quad);
  const Evaluation line = typical_line_factor(f, params, quad);
  return {base.value * line.value, base.error * line.value + base.value * line.error};
}

double laplace_palm(const PlanarFunction& f, const ModelParams& params,
                    const QuadratureSpec& quad) {
  return laplace_palm_eval(f, params, quad).value;
}

Evaluation laplace_palm_radial_eval(const RadialFunction& f, const ModelParams& params,
                                    const QuadratureSpec& quad) {
  const Evaluation base = laplace_functional_radial_eval(f, params, quad);
  const Evaluation line = typical_line_factor_radial(f, params, quad);
  return {base.value * line.value, base.error * line.value + base.value * line.error};
}

double laplace_palm_radial(const RadialFunction& f, const ModelParams& params,
                           const QuadratureSpec& quad) {
  return laplace_palm_radial_eval(f, params, quad).value;
}

FacetDensities facet_densities(const ModelParams& params) {
  params.validate();
  const double density = params.mu * params.lambda_l;
  return {2.0 * density, 3.0 * density, density};
}

double point_density(const ModelParams& params) { return params.mu * params.lambda_l; }

double cell_length_cdf(double length, double lambda_l) {
  if (!(length >= 0.0)) throw DomainError("length must be nonnegative");
  const double x = 2.0 * lambda_l * length;
  return -std::expm1(-x) - x * std::exp(-x);
}

double half_length_cdf(double length, double lambda_l) {
  if (!(length >= 0.0)) throw DomainError("length must be nonnegative");
  return -std::expm1(-2.0 * lambda_l * length);
}

double segment_length_cdf(double length, double lambda_l, const QuadratureSpec& quad) {
  if (!(length >= 0.0) || !std::isfinite(length)) {
    throw DomainError("length must be finite and nonnegative");
  }
  if (!(lambda_l > 0.0)) throw DomainError("lambda_l must be positive");
  quad.validate();
  if (length == 0.0) return 0.0;
  // Density of S+ at a restricted to S- <= length - a, with a = length sin^2(psi).
  // Then d per / da = 4 psi + 2 sin(2 psi) and
  // per = length (pi + 2 sin(2 psi) - (4 psi - pi) cos(2 psi)).
  const QuadResult joint = checked(
      integrate(
          [&](double psi) {
            const double s2 = std::sin(2.0 * psi);
            const double c2 = std::cos(2.0 * psi);
            const double perimeter = length * (kPi + 2.0 * s2 - (4.0 * psi - kPi) * c2);
            return (4.0 * psi + 2.0 * s2) * std::exp(-lambda_l * perimeter / kPi) * length * s2;
          },
          0.0, kPi / 2.0, quad),
      "segment length law");
  return std::clamp(-std::expm1(-2.0 * lambda_l * length) - lambda_l / kPi * joint.value, 0.0,
                    1.0);
}

double nearest_line_cdf(double r, double lambda_l) { return half_length_cdf(r, lambda_l); }

std::vector<double> Grid::points() const {
  if (count < 1) throw DomainError("grid count must be at least 1");
  if (!(max >= min)) throw DomainError("grid max must not be below grid min");
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = min;
    return out;
  }
  const double step = (max - min) / (count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = min + step * i;
  out.back() = max;
  return out;
}

std::vector<std::pair<double, double>> tabulate(const Grid& grid,
                                                const std::function<double(double)>& fn) {
  std::vector<std::pair<double, double>> table;
  for (double x : grid.points()) table.emplace_back(x, fn(x));
  return table;
}

}  // namespace plcp
