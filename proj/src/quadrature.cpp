#include "gg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gg/numeric.hpp"

namespace gg {
namespace {

// Roots and weights of the physicists' Hermite polynomial H_n (weight
// exp(-x^2)) by Newton iteration on the normalized recurrence.
void gauss_hermite_physicists(int n, std::vector<double>& x, std::vector<double>& w) {
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int m = (n + 1) / 2;
  double z = 0.0, pp = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(n, 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * (1.0 + std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = 2.0 / (pp * pp);
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

}  // namespace

GaussHermite::GaussHermite(int order) {
  if (order < 1 || order > 256) throw std::invalid_argument("quadrature order out of range");
  std::vector<double> xp, wp;
  gauss_hermite_physicists(order, xp, wp);
  nodes.resize(order);
  weights.resize(order);
  const double sqrt2 = std::numbers::sqrt2;
  const double inv_sqrt_pi = 1.0 / std::sqrt(std::numbers::pi);
  for (int i = 0; i < order; ++i) {
    nodes[i] = -sqrt2 * xp[i];  // flip so nodes come out ascending
    weights[i] = wp[i] * inv_sqrt_pi;
  }
  double sum = pairwise_sum(weights);
  if (std::abs(sum - 1.0) > 1e-14)
    throw std::runtime_error("Gauss-Hermite weights failed normalization check");
}

}  // namespace gg
