#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gg/disorder.hpp"
#include "gg/gibbs.hpp"
#include "gg/model.hpp"

namespace gg {

// Product of generalized-overlap factors q_{a,b} over 1-based replica
// indices. q_{a,a} is the deterministic self-overlap constant.
struct OverlapMonomial {
  std::vector<std::pair<int, int>> factors;  // stored with a <= b

  int degree() const { return static_cast<int>(factors.size()); }
  int max_replica() const;
  OverlapMonomial times_q(int a, int b) const;  // append one factor
  std::string str() const;

  // Grammar: product of q[a,b] factors with optional integer powers,
  // e.g. "q[1,2]*q[2,3]", "q[1,2]^2"; "1" is the empty product.
  static OverlapMonomial parse(std::string_view text);
};

inline constexpr int kMaxMonomialDegree = 4;
inline constexpr std::int64_t kMaxMonomialTuples = 1'000'000;

// One monomial (plus optional extra parity insertions sigma_M on chosen
// replicas) compiled against a family: the subset-tuple expansion reduced to
// coefficients over a shared list of distinct parity masks.
struct PlanRequest {
  OverlapMonomial monomial;
  // (replica, site mask) parity factors multiplied into the observable.
  std::vector<std::pair<int, std::uint32_t>> extras;
};

class MonomialPlanSet {
 public:
  MonomialPlanSet(const InteractionFamily& family, std::vector<PlanRequest> requests);

  int size() const { return static_cast<int>(terms_.size()); }
  std::size_t mask_count() const { return masks_.size(); }

  // Exact R-product Gibbs expectation of every request for one sample.
  void eval(const GibbsTable& table, double* out) const;
  double eval_one(const GibbsTable& table, int i) const;

 private:
  struct Term {
    double coeff;
    std::array<std::uint16_t, 8> idx;
    std::uint8_t n;
  };
  std::vector<std::uint32_t> masks_;
  std::vector<std::vector<Term>> terms_;
  std::vector<double> prefactor_;
};

// Exact Omega[G] for a monomial observable.
double omega_monomial_exact(const InteractionFamily& family, const DisorderSample& sample,
                            double beta, const OverlapMonomial& m);

// Access to the overlap matrix of a drawn replica tuple.
class OverlapView {
 public:
  OverlapView(const InteractionFamily& family, std::span<const SpinConfiguration> replicas)
      : family_(family), replicas_(replicas) {}
  // Normalized covariance c(sigma^(a), sigma^(b)), 1-based indices.
  double q(int a, int b) const;
  // Site overlap (1/N) sum_n sigma_n tau_n, for comparison with q.
  double site_overlap(int a, int b) const;

 private:
  const InteractionFamily& family_;
  std::span<const SpinConfiguration> replicas_;
};

// Bounded observable of the overlap entries with a declared sup bound.
struct ObservableFn {
  int replicas = 1;
  double bound = 1.0;
  std::function<double(const OverlapView&)> fn;
};

struct MeanStderrPair {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Replica Monte Carlo estimate of Omega[G]: draws `replicas` independent
// configurations per evaluation from the same Gibbs table.
MeanStderrPair omega_general_mc(const InteractionFamily& family, const DisorderSample& sample,
                                double beta, const ObservableFn& g, std::int64_t n_draws,
                                rng::Stream& stream);

// <G> = Av(Omega[G]) for a monomial observable.
QuenchedEstimate quenched_moment(const InteractionFamily& family, double beta,
                                 const OverlapMonomial& m, const Scheme& scheme, int workers);

}  // namespace gg
