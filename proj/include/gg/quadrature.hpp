#pragma once

#include <vector>

namespace gg {

// Gauss-Hermite rule rescaled to the standard normal weight
// exp(-x^2/2)/sqrt(2*pi): integrates polynomials up to degree 2*order-1
// exactly; weights sum to 1 within 1e-14 (checked at construction).
struct GaussHermite {
  explicit GaussHermite(int order);
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // positive
};

}  // namespace gg
