#pragma once

#include <cstddef>
#include <vector>

namespace mirrorvis {

/// Nodes and weights for  integral of e^{-x^2} g(x) dx  over the real line.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_hermite(std::size_t order);

}  // namespace mirrorvis
