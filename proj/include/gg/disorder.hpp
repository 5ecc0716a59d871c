#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gg/model.hpp"

namespace gg {

// One realization of the couplings {J_X}, aligned with the family's
// canonical subset order. Regenerating with the same (seed, index) yields
// bit-identical values.
struct DisorderSample {
  std::vector<double> couplings;
  std::int64_t index = 0;
  std::uint64_t seed = 0;
};

DisorderSample sample_disorder(const InteractionFamily& family, std::uint64_t seed,
                               std::int64_t index);

enum class Method { monte_carlo, quadrature };

struct QuenchedEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::int64_t n = 0;
  Method method = Method::monte_carlo;
  std::uint64_t seed = 0;
  int order = 0;  // quadrature truncation order (0 for MC)
};

struct Scheme {
  Method method = Method::monte_carlo;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  int order = 20;

  static Scheme mc(std::int64_t n, std::uint64_t seed) {
    return Scheme{Method::monte_carlo, n, seed, 0};
  }
  static Scheme quadrature(int order) { return Scheme{Method::quadrature, 0, 0, order}; }
};

inline constexpr std::int64_t kQuadratureNodeCap = 10'000'000;

// Number of tensor-product nodes (order^K over couplings with positive
// variance); throws std::runtime_error when it exceeds the cap.
std::int64_t quadrature_node_count(const InteractionFamily& family, int order);
bool quadrature_feasible(const InteractionFamily& family, int order);

using SampleFn = std::function<void(const DisorderSample&, double* out)>;

struct QuenchedVec {
  std::vector<QuenchedEstimate> estimates;
  // Covariance matrix of the mean vector (n_out x n_out, row-major).
  // Zero for quadrature.
  std::vector<double> mean_covariance;
};

// Disorder average of a vector-valued function of the couplings. Monte Carlo
// uses counter-based samples and a fixed pairwise reduction, so results are
// bit-identical for any worker count; quadrature is the exact tensor
// Gauss-Hermite expectation.
QuenchedVec quenched_average_vec(const InteractionFamily& family, const Scheme& scheme, int n_out,
                                 int workers, const SampleFn& f);

QuenchedEstimate quenched_average(const InteractionFamily& family, const Scheme& scheme,
                                  int workers,
                                  const std::function<double(const DisorderSample&)>& f);

// Raw per-sample values (Monte Carlo only), row-major n_samples x n_out.
std::vector<double> quenched_samples(const InteractionFamily& family, std::int64_t n,
                                     std::uint64_t seed, int n_out, int workers,
                                     const SampleFn& f);

// A smooth test function of the couplings, for integration-by-parts checks.
struct WickFn {
  std::string name;
  std::function<double(std::span<const double>)> f;
};

// Max over i of | Av(J_i psi) - sum_j Av(J_i J_j) Av(dpsi/dJ_j) |, all
// expectations by tensor quadrature, derivative by Richardson-extrapolated
// central differences.
double wick_residual(const InteractionFamily& family, const WickFn& psi, int order);

// Test functions used by the acceptance suite: polynomials of degree <= 4,
// products of tanh(beta J_k), and the Gibbs expectation omega(sigma_X) of
// the family's own subsets.
std::vector<WickFn> builtin_wick_suite(const InteractionFamily& family, double beta);

}  // namespace gg
