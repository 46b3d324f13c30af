#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <span>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace plcp {

/// Tolerances and limits shared by every numerical integral.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 4000;
  /// Tail mass below which a function is treated as zero when truncating
  /// infinite ranges.
  double trunc_tail = 1e-10;

  void validate() const;

  /// Tolerances scaled by `factor` (used for inner integrals of nested rules).
  QuadratureSpec tightened(double factor) const;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
  bool converged = true;
};

namespace detail {

template <class F>
double gauss15(F& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 15>::integrate(std::ref(f), a, b);
}

struct Panel {
  double a;
  double b;
  double coarse;  // one 15-point rule on [a, b]
  double left;    // 15-point rule on [a, m]
  double right;   // 15-point rule on [m, b]
  double error() const { return std::abs(left + right - coarse); }
  bool operator<(const Panel& other) const { return error() < other.error(); }
};

template <class F>
Panel make_panel(F& f, double a, double b, double coarse) {
  const double m = 0.5 * (a + b);
  return {a, b, coarse, gauss15(f, a, m), gauss15(f, m, b)};
}

}  // namespace detail

/// Globally adaptive Gauss-Legendre quadrature of f over [a, b].
///
/// Each panel carries a 15-point rule and the same rule on its two halves; the
/// difference is the panel's error estimate and the halves are the accepted
/// value. The worst panel is split until the summed estimate meets
/// max(abs_tol, rel_tol * |value|) or max_subdivisions splits were spent.
/// `breakpoints` inside (a, b) seed the initial panels.
template <class F>
QuadResult integrate(F&& f, double a, double b, const QuadratureSpec& spec,
                     std::span<const double> breakpoints = {}) {
  QuadResult result;
  if (a == b) return result;
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::vector<double> cuts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<detail::Panel> panels;
  double value = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    detail::Panel p = detail::make_panel(f, cuts[i], cuts[i + 1],
                                         detail::gauss15(f, cuts[i], cuts[i + 1]));
    value += p.left + p.right;
    error += p.error();
    panels.push(p);
  }

  auto tolerance = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::abs(value)); };
  while (error > tolerance() && result.subdivisions < spec.max_subdivisions) {
    const detail::Panel worst = panels.top();
    panels.pop();
    const double m = 0.5 * (worst.a + worst.b);
    if (!(m > worst.a && m < worst.b)) {
      panels.push(worst);
      break;  // panel at machine resolution
    }
    detail::Panel lo = detail::make_panel(f, worst.a, m, worst.left);
    detail::Panel hi = detail::make_panel(f, m, worst.b, worst.right);
    value += (lo.left + lo.right + hi.left + hi.right) - (worst.left + worst.right);
    error += lo.error() + hi.error() - worst.error();
    panels.push(lo);
    panels.push(hi);
    ++result.subdivisions;
  }

  // Re-sum to shed the drift of the running totals.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().left + panels.top().right;
    error += panels.top().error();
    panels.pop();
  }
  result.value = sign * value;
  result.error = error;
  result.converged = error <= std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
  return result;
}

}  // namespace plcp
