#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gg/disorder.hpp"
#include "gg/model.hpp"
#include "gg/observables.hpp"

namespace gg {

enum class Measure { d_beta2, d_beta };

// Dual computation of one Delta building block: a closed-form overlap
// expression against its definitional (derivative / covariance) form.
struct DeltaReport {
  double beta = 0.0;
  int replicas = 0;
  std::string observable;
  QuenchedEstimate closed;
  QuenchedEstimate definitional;
  double discrepancy = 0.0;
};

// Delta_1 G closed form: -beta <G [ sum_{k!=l} q_{l,k} - 2R sum_l q_{l,R+1}
// + R(R+1) q_{R+1,R+2} ]>. With keep_self_overlaps the pre-cancellation
// sums (including the diagonal q_{l,l} and q_{R+1,R+1} terms) are used;
// the two agree exactly.
QuenchedEstimate delta1_closed(const InteractionFamily& family, double beta, int replicas,
                               const OverlapMonomial& g, const Scheme& scheme, int workers,
                               bool keep_self_overlaps = false);

// Delta_1 G = -(1/|volume|) d<G>/dbeta by Richardson-extrapolated central
// differences (step h, one extrapolation level).
QuenchedEstimate delta1_definitional(const InteractionFamily& family, double beta,
                                     const OverlapMonomial& g, const Scheme& scheme, int workers,
                                     double h = 1e-4);

// Delta_2 G closed form: -beta R [ sum_k <G q_{k,R+1}> - (R+1) <G q_{R+1,R+2}>
// + <G><q_{1,2}> ].
QuenchedEstimate delta2_closed(const InteractionFamily& family, double beta, int replicas,
                               const OverlapMonomial& g, const Scheme& scheme, int workers);

// Delta_2 G definition: R [ Av(Omega[h] Omega[G]) - Av(Omega[h]) Av(Omega[G]) ]
// with h the energy per site.
QuenchedEstimate delta2_definitional(const InteractionFamily& family, double beta, int replicas,
                                     const OverlapMonomial& g, const Scheme& scheme, int workers);

DeltaReport delta1_dual(const InteractionFamily& family, double beta, int replicas,
                        const OverlapMonomial& g, const Scheme& scheme, int workers);
DeltaReport delta2_dual(const InteractionFamily& family, double beta, int replicas,
                        const OverlapMonomial& g, const Scheme& scheme, int workers);

struct SumRuleReport {
  double closed_sum = 0.0;  // Delta_1 + Delta_2 via closed forms
  double direct = 0.0;      // sum_l [<h G> - <h><G>] computed directly
  double residual = 0.0;
};

SumRuleReport sum_rule_check(const InteractionFamily& family, double beta, int replicas,
                             const OverlapMonomial& g, const Scheme& scheme, int workers);

struct ResidualCurve {
  Measure measure = Measure::d_beta2;
  std::vector<double> betas;
  std::vector<double> values;
  std::vector<double> stderrs;
  double integral = 0.0;
  double integral_stderr = 0.0;
};

// The two theorem integrands (the Delta_1 bracket and the Delta_2 bracket
// without their -beta / -beta*R prefactors) on a beta grid, with the
// composite-rule integral in the chosen measure.
std::pair<ResidualCurve, ResidualCurve> gg_residuals(const InteractionFamily& family, int replicas,
                                                     const OverlapMonomial& g, double beta1,
                                                     double beta2, int grid_points,
                                                     Measure measure, const Scheme& scheme,
                                                     int workers);

// r1 = <q12 q23> - 1/2 <q12^2> - 1/2 <q12>^2 and
// r2 = <q12 q34> - 1/3 <q12^2> - 2/3 <q12>^2.
std::pair<ResidualCurve, ResidualCurve> classical_identities(const InteractionFamily& family,
                                                             double beta1, double beta2,
                                                             int grid_points, Measure measure,
                                                             const Scheme& scheme, int workers);

struct VarianceReport {
  double beta = 0.0;
  int volume = 0;
  double variance = 0.0;
  double stderr_ = 0.0;  // bootstrap
  double ci_lo = 0.0;    // 95% bootstrap percentile interval
  double ci_hi = 0.0;
  double bound = 0.0;
  bool satisfied = false;  // upper CI below the bound
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// V(A) against |volume| * (1/4 beta^2 cbar + 35/36 beta^4 cbar^2).
VarianceReport free_energy_variance(const InteractionFamily& family, double beta, std::int64_t n,
                                    std::uint64_t seed, int workers);
// V(u), u = U/|volume|, against 15 beta^2 cbar^2.
VarianceReport internal_energy_variance(const InteractionFamily& family, double beta,
                                        std::int64_t n, std::uint64_t seed, int workers);

// First-moment energy identity: Av(sum_X J_X omega(sigma_X)) equals
// sum_X beta Delta^2_X [1 - Av(omega^2(sigma_X))]; the enumerated internal
// energy is minus the left side under H = -sum J sigma.
struct EnergyIdentityReport {
  double beta = 0.0;
  double lhs = 0.0;          // Av(sum_X J_X omega(sigma_X))
  double rhs = 0.0;          // closed form
  double enumerated = 0.0;   // Av(U) from the Gibbs table
  double residual = 0.0;     // max(|lhs-rhs|, |enumerated + lhs|)
};

EnergyIdentityReport internal_energy_identity_check(const InteractionFamily& family, double beta,
                                                    int order);

// Second-moment identity. rhs_as_printed is the six-term bracket sum alone;
// the exact identity needs the diagonal term sum_X Delta^2_X Av(omega^2) on
// top of it (rhs), which is what `residual` measures against Av(U^2).
struct SecondMomentReport {
  double beta = 0.0;
  double lhs = 0.0;  // Av(U^2)
  double rhs = 0.0;
  double rhs_as_printed = 0.0;
  double residual = 0.0;
  double residual_as_printed = 0.0;
};

SecondMomentReport internal_energy_second_moment_check(const InteractionFamily& family,
                                                       double beta, int order);

// Per-sample per-beta table of the four moments that drive the classical
// and theorem residuals for G = q12, R = 2:
// [ Omega(q12), Omega(q12^2), Omega(q12 q23), Omega(q12 q34) ].
struct MomentTable {
  std::vector<double> betas;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> data;  // [sample][beta][4]

  double value(std::int64_t sample, std::size_t beta_idx, int component) const {
    return data[(static_cast<std::size_t>(sample) * betas.size() + beta_idx) * 4 +
                static_cast<std::size_t>(component)];
  }
};

MomentTable compute_moment_table(const InteractionFamily& family, std::vector<double> betas,
                                 std::int64_t n_samples, std::uint64_t seed, int workers);

struct BootstrapStat {
  double value = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double stderr_ = 0.0;
};

// Simpson-weighted average of |r_which(beta)| (which = 1 or 2), with a
// bootstrap percentile CI over disorder samples.
BootstrapStat classical_integral_stat(const MomentTable& table, int which, Measure measure,
                                      std::uint64_t seed, int resamples = 200);

// |integral of the theorem residual| for Eq-19-style (which = 1) or
// Eq-20-style (which = 2) integrands with G = q12, R = 2.
BootstrapStat gg_integral_stat(const MomentTable& table, int which, Measure measure,
                               std::uint64_t seed, int resamples = 200);

// c(beta) = 1/4 beta^2 cbar + 35/36 beta^4 cbar^2.
double free_energy_variance_bound_per_site(double beta, double cbar);

}  // namespace gg
