#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "plcp/geometry.hpp"
#include "plcp/quadrature.hpp"
#include "plcp/sampler.hpp"

namespace plcp {

/// A value obtained by quadrature together with its propagated error estimate.
struct Evaluation {
  double value = 0.0;
  double error = 0.0;
};

/// Nonnegative radial test function f~(rho).
///
/// `support_radius` is the radius beyond which the function is treated as zero:
/// either it vanishes there or it stays below the quadrature tail bound.
/// `breakpoints` lists radii where f~ is not smooth.
struct RadialFunction {
  std::function<double(double)> evaluator;
  double support_radius = std::numeric_limits<double>::infinity();
  std::vector<double> breakpoints;

  double operator()(double rho) const { return rho > support_radius ? 0.0 : evaluator(rho); }
};

/// Nonnegative planar test function, zero outside the disk of `support_radius`.
/// `breakpoints` are radii of origin-centred circles across which f is not
/// smooth.
struct PlanarFunction {
  std::function<double(Point2)> evaluator;
  double support_radius = std::numeric_limits<double>::infinity();
  std::vector<double> breakpoints;

  double operator()(Point2 p) const {
    return norm2(p) > support_radius * support_radius ? 0.0 : evaluator(p);
  }
};

/// f~(rho) = scale * exp(-(rho / width)^2), truncated where its planar mass
/// beyond the support radius drops below `tail`.
RadialFunction gaussian_bump(double scale = 1.0, double width = 1.0, double tail = 1e-10);

/// Path loss s * rho^-alpha, capped at its value at `exclusion` below that
/// radius. With a finite `cutoff` the function is zero beyond it; otherwise
/// (alpha > 2 required) the support ends where the planar mass of the rest,
/// 2 pi s R^(2 - alpha) / (alpha - 2), drops below `tail`. The Laplace
/// functional then errs by at most mu lambda_l times `tail`.
RadialFunction path_loss(double alpha, double scale, double exclusion,
                         double cutoff = std::numeric_limits<double>::infinity(),
                         double tail = 1e-10);

/// `height` on the closed disk of `radius`, zero outside.
RadialFunction hard_wall(double height, double radius);

PlanarFunction as_planar(const RadialFunction& f);

/// Shifts a planar function: g(x) = f(x - center). The support grows by |center|.
PlanarFunction shifted(const PlanarFunction& f, Point2 center);

/// P(distance from the origin to the nearest point <= r) for the stationary
/// process.
double nn_cdf(double r, const ModelParams& params, const QuadratureSpec& quad = {});
Evaluation nn_cdf_eval(double r, const ModelParams& params, const QuadratureSpec& quad = {});

/// Nearest-neighbour distance law from the typical point (Palm).
double nn_cdf_palm(double r, const ModelParams& params, const QuadratureSpec& quad = {});
Evaluation nn_cdf_palm_eval(double r, const ModelParams& params,
                            const QuadratureSpec& quad = {});

/// E exp(-sum f(X)) for a general planar f (triple nested quadrature over
/// lines (r, theta) and the arc coordinate t on the full line).
double laplace_functional(const PlanarFunction& f, const ModelParams& params,
                          const QuadratureSpec& quad = {});
Evaluation laplace_functional_eval(const PlanarFunction& f, const ModelParams& params,
                                   const QuadratureSpec& quad = {});

/// Laplace functional for radially symmetric f (the angle integral drops out).
double laplace_functional_radial(const RadialFunction& f, const ModelParams& params,
                                 const QuadratureSpec& quad = {});
Evaluation laplace_functional_radial_eval(const RadialFunction& f, const ModelParams& params,
                                          const QuadratureSpec& quad = {});

/// Angle-averaged Laplace transform of the typical line's own points:
/// (1/pi) int_0^pi exp(-mu int_R (1 - exp(-f(t cos th, t sin th))) dt) dth.
Evaluation typical_line_factor(const PlanarFunction& f, const ModelParams& params,
                               const QuadratureSpec& quad = {});

/// Same factor for radial f: exp(-mu int_R (1 - exp(-f~(|t|))) dt).
Evaluation typical_line_factor_radial(const RadialFunction& f, const ModelParams& params,
                                      const QuadratureSpec& quad = {});

/// Palm Laplace functional, reduced (the typical point itself is not in the
/// sum): laplace_functional(f) times the typical-line factor.
double laplace_palm(const PlanarFunction& f, const ModelParams& params,
                    const QuadratureSpec& quad = {});
Evaluation laplace_palm_eval(const PlanarFunction& f, const ModelParams& params,
                             const QuadratureSpec& quad = {});

/// Radial Palm Laplace functional via the radial code path.
double laplace_palm_radial(const RadialFunction& f, const ModelParams& params,
                           const QuadratureSpec& quad = {});
Evaluation laplace_palm_radial_eval(const RadialFunction& f, const ModelParams& params,
                                    const QuadratureSpec& quad = {});

struct FacetDensities {
  double vertices = 0.0;
  double edges = 0.0;
  double cells = 0.0;

  double euler() const { return vertices - edges + cells; }
};

/// Densities of the vertices, edges and cells of the Cox-Voronoi tessellation.
FacetDensities facet_densities(const ModelParams& params);

/// Mean number of points per unit area.
double point_density(const ModelParams& params);

/// Limiting typical-cell length law, Erlang(2, 2 lambda_l).
double cell_length_cdf(double length, double lambda_l);

/// Exact mu -> infinity law of S+ + S-. The two halves are each Exp(2 lambda_l)
/// but dependent: P(S+ > a, S- > b) = exp(-lambda_l per(a, b) / pi) with per
/// the perimeter of the convex hull of the disks B((0, a), a) and B((0, -b), b),
/// since a line can hit both.
double segment_length_cdf(double length, double lambda_l, const QuadratureSpec& quad = {});

/// Limiting law of one half of the typical cell, Exp(2 lambda_l).
double half_length_cdf(double length, double lambda_l);

/// Limiting distance from the origin to the nearest line, Exp(2 lambda_l);
/// the mu -> infinity limit of nn_cdf.
double nearest_line_cdf(double r, double lambda_l);

struct Grid {
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  std::vector<double> points() const;
};

/// Tabulates `fn` on the grid as (abscissa, value) pairs.
std::vector<std::pair<double, double>> tabulate(const Grid& grid,
                                                const std::function<double(double)>& fn);

}  // namespace plcp
