#include "plcp/quadrature.hpp"

#include "plcp/errors.hpp"

namespace plcp {

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) throw DomainError("max_subdivisions must be at least 1");
  if (!(trunc_tail > 0.0)) throw DomainError("trunc_tail must be positive");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec out = *this;
  out.abs_tol *= factor;
  out.rel_tol *= factor;
  return out;
}

}  // namespace plcp
