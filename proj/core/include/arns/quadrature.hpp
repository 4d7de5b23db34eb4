#pragma once

#include <cstddef>
#include <vector>

namespace arns {

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule by Newton iteration on the Legendre recurrence. Rules are
/// cached per n; the returned reference stays valid for the program lifetime.
const GaussLegendreRule& gauss_legendre(std::size_t n);

/// Uniform periodic trapezoid nodes phi_j = 2 pi j / n with weight 2 pi / n.
std::vector<double> trapezoid_angles(std::size_t n);

}  // namespace arns
