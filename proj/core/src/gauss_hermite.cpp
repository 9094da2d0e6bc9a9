#include "mirrorvis/gauss_hermite.hpp"

#include <memory>

#include <gsl/gsl_integration.h>

#include "mirrorvis/errors.hpp"

namespace mirrorvis {

QuadratureRule gauss_hermite(std::size_t order) {
  if (order == 0) throw ParameterError("gauss_hermite: order must be > 0");
  // Weight (x - a)^0 exp(-b (x - a)^2) with a = 0, b = 1.
  std::unique_ptr<gsl_integration_fixed_workspace, decltype(&gsl_integration_fixed_free)> ws(
      gsl_integration_fixed_alloc(gsl_integration_fixed_hermite, order, 0.0, 1.0, 0.0, 0.0),
      &gsl_integration_fixed_free);
  if (!ws) throw NumericalError("gauss_hermite: GSL failed to build the rule");
  const double* x = gsl_integration_fixed_nodes(ws.get());
  const double* w = gsl_integration_fixed_weights(ws.get());
  return {std::vector<double>(x, x + order), std::vector<double>(w, w + order)};
}

}  // namespace mirrorvis
