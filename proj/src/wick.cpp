#include <cmath>

#include "gg/disorder.hpp"
#include "gg/gibbs.hpp"

namespace gg {

std::vector<WickFn> builtin_wick_suite(const InteractionFamily& family, double beta) {
  std::vector<WickFn> suite;
  const std::size_t k = family.subsets.size();

  suite.push_back({"poly_x0", [](std::span<const double> j) { return j[0]; }});
  suite.push_back({"poly_x0^2", [](std::span<const double> j) { return j[0] * j[0]; }});
  suite.push_back(
      {"poly_x0^3-2x0", [](std::span<const double> j) { return j[0] * j[0] * j[0] - 2.0 * j[0]; }});
  suite.push_back({"poly_x0^4", [](std::span<const double> j) {
                     double x2 = j[0] * j[0];
                     return x2 * x2;
                   }});
  if (k >= 2) {
    suite.push_back({"poly_x0*x1", [](std::span<const double> j) { return j[0] * j[1]; }});
    suite.push_back({"poly_x0^2*x1^2",
                     [](std::span<const double> j) { return j[0] * j[0] * j[1] * j[1]; }});
  }

  for (std::size_t i = 0; i < k; ++i) {
    suite.push_back({"tanh_x" + std::to_string(i),
                     [beta, i](std::span<const double> j) { return std::tanh(beta * j[i]); }});
  }
  suite.push_back({"tanh_product", [beta](std::span<const double> j) {
                     double p = 1.0;
                     for (double x : j) p *= std::tanh(beta * x);
                     return p;
                   }});

  // Gibbs expectations of the family's own parity products; the instance
  // used throughout the Delta decomposition.
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t mask = family.subsets[i].mask;
    suite.push_back({"gibbs_omega_" + std::to_string(i),
                     [family, beta, mask](std::span<const double> j) {
                       DisorderSample s;
                       s.couplings.assign(j.begin(), j.end());
                       GibbsTable t(family, s, beta);
                       return t.omega(mask);
                     }});
  }
  return suite;
}

}  // namespace gg
