#include "gg/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gg/gibbs.hpp"
#include "gg/numeric.hpp"
#include "gg/parallel.hpp"
#include "gg/rng.hpp"

namespace gg {

namespace {

void require_replicas(int replicas) {
  if (replicas < 1 || replicas > 10)
    throw std::invalid_argument("replica count must be in [1, 10]");
}

// Independent per-grid-point seed for Monte Carlo curves.
Scheme point_scheme(const Scheme& scheme, std::size_t point) {
  Scheme s = scheme;
  if (s.method == Method::monte_carlo) s.seed = rng::counter_hash(scheme.seed, 0x6772u, point);
  return s;
}

std::vector<double> beta_grid(double beta1, double beta2, int n, Measure measure) {
  if (n < 2) throw std::invalid_argument("beta grid needs at least 2 points");
  if (!(beta1 >= 0.0) || !(beta2 > beta1)) throw std::invalid_argument("bad beta interval");
  std::vector<double> betas(static_cast<std::size_t>(n));
  if (measure == Measure::d_beta2) {
    double t1 = beta1 * beta1, t2 = beta2 * beta2;
    for (int i = 0; i < n; ++i)
      betas[static_cast<std::size_t>(i)] = std::sqrt(t1 + (t2 - t1) * i / (n - 1));
  } else {
    for (int i = 0; i < n; ++i)
      betas[static_cast<std::size_t>(i)] = beta1 + (beta2 - beta1) * i / (n - 1);
  }
  return betas;
}

double grid_step(double beta1, double beta2, int n, Measure measure) {
  double t1 = beta1, t2 = beta2;
  if (measure == Measure::d_beta2) {
    t1 *= beta1;
    t2 *= beta2;
  }
  return (t2 - t1) / (n - 1);
}

// Requests for the Delta_1 bracket: G itself, then G q_{l,k} for l < k <= R,
// G q_{l,R+1}, G q_{R+1,R+2}, and finally q_{1,2} alone (used by Delta_2).
struct BracketPlan {
  std::vector<PlanRequest> requests;
  int n_out = 0;
  int idx_g = 0;
  int idx_lk = 0;  // first of R(R-1)/2
  int idx_lr1 = 0; // first of R
  int idx_cross = 0;
  int idx_q12 = 0;
  int replicas = 0;

  BracketPlan(const OverlapMonomial& g, int replicas_in) : replicas(replicas_in) {
    const int r = replicas;
    idx_g = 0;
    requests.push_back({g, {}});
    idx_lk = static_cast<int>(requests.size());
    for (int l = 1; l <= r; ++l)
      for (int k = l + 1; k <= r; ++k) requests.push_back({g.times_q(l, k), {}});
    idx_lr1 = static_cast<int>(requests.size());
    for (int l = 1; l <= r; ++l) requests.push_back({g.times_q(l, r + 1), {}});
    idx_cross = static_cast<int>(requests.size());
    requests.push_back({g.times_q(r + 1, r + 2), {}});
    idx_q12 = static_cast<int>(requests.size());
    requests.push_back({OverlapMonomial{}.times_q(1, 2), {}});
    n_out = static_cast<int>(requests.size());
  }

  // Sum_{l!=k<=R} m_{lk} - 2R sum_l m_{l,R+1} + R(R+1) m_cross.
  double bracket1(const double* m) const {
    const int r = replicas;
    double acc = 0.0;
    for (int i = idx_lk; i < idx_lr1; ++i) acc += 2.0 * m[i];
    for (int i = idx_lr1; i < idx_cross; ++i) acc -= 2.0 * r * m[i];
    acc += static_cast<double>(r) * (r + 1) * m[idx_cross];
    return acc;
  }

  // Sum_{k<=R} m_{k,R+1} - (R+1) m_cross (the linear part of bracket 2).
  double bracket2_linear(const double* m) const {
    const int r = replicas;
    double acc = 0.0;
    for (int i = idx_lr1; i < idx_cross; ++i) acc += m[i];
    acc -= static_cast<double>(r + 1) * m[idx_cross];
    return acc;
  }
};

QuenchedEstimate scaled(QuenchedEstimate e, double factor) {
  e.mean *= factor;
  e.stderr_ *= std::abs(factor);
  return e;
}

struct BootstrapSummary {
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double stderr_ = 0.0;
};

// Percentile interval and spread of precomputed resample statistics.
BootstrapSummary summarize_bootstrap(std::vector<double> stats) {
  BootstrapSummary s;
  if (stats.size() < 2) return s;
  s.stderr_ = std::sqrt(sample_variance(stats));
  std::sort(stats.begin(), stats.end());
  auto pick = [&](double p) {
    double pos = p * (static_cast<double>(stats.size()) - 1.0);
    auto lo = static_cast<std::size_t>(pos);
    std::size_t hi = std::min(lo + 1, stats.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return stats[lo] * (1.0 - frac) + stats[hi] * frac;
  };
  s.ci_lo = pick(0.025);
  s.ci_hi = pick(0.975);
  return s;
}

VarianceReport variance_report_from_samples(const InteractionFamily& family, double beta,
                                            std::vector<double> values, double bound,
                                            std::int64_t n, std::uint64_t seed) {
  VarianceReport rep;
  rep.beta = beta;
  rep.volume = family.volume;
  rep.bound = bound;
  rep.n_samples = n;
  rep.seed = seed;
  rep.variance = sample_variance(values);

  const std::size_t m = values.size();
  std::vector<double> stats(200);
  std::vector<double> resampled(m);
  for (std::size_t r = 0; r < stats.size(); ++r) {
    for (std::size_t i = 0; i < m; ++i) {
      std::uint64_t h = rng::counter_hash(seed ^ 0xb007'57a7ULL, r, i);
      resampled[i] = values[h % m];
    }
    stats[r] = sample_variance(resampled);
  }
  auto bs = summarize_bootstrap(std::move(stats));
  rep.stderr_ = bs.stderr_;
  rep.ci_lo = bs.ci_lo;
  rep.ci_hi = bs.ci_hi;
  rep.satisfied = rep.ci_hi <= bound;
  return rep;
}

}  // namespace

QuenchedEstimate delta1_closed(const InteractionFamily& family, double beta, int replicas,
                               const OverlapMonomial& g, const Scheme& scheme, int workers,
                               bool keep_self_overlaps) {
  require_replicas(replicas);
  const int r = replicas;
  BracketPlan bp(g, r);
  std::vector<PlanRequest> requests = bp.requests;
  int idx_diag = -1;
  if (keep_self_overlaps) {
    // Pre-cancellation form: the diagonal q_{l,l} terms from the full double
    // sum and the -R q_{R+1,R+1} counterterm, which offset exactly.
    idx_diag = static_cast<int>(requests.size());
    for (int l = 1; l <= r; ++l) requests.push_back({g.times_q(l, l), {}});
    requests.push_back({g.times_q(r + 1, r + 1), {}});
  }
  MonomialPlanSet plan(family, requests);

  auto result = quenched_average_vec(
      family, scheme, 1, workers, [&](const DisorderSample& s, double* out) {
        std::vector<double> buf(static_cast<std::size_t>(plan.size()));
        GibbsTable table(family, s, beta);
        plan.eval(table, buf.data());
        double b = bp.bracket1(buf.data());
        if (idx_diag >= 0) {
          for (int l = 0; l < r; ++l) b += buf[static_cast<std::size_t>(idx_diag + l)];
          b -= r * buf[static_cast<std::size_t>(idx_diag + r)];
        }
        out[0] = b;
      });
  return scaled(result.estimates[0], -beta);
}

QuenchedEstimate delta1_definitional(const InteractionFamily& family, double beta,
                                     const OverlapMonomial& g, const Scheme& scheme, int workers,
                                     double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  if (beta - 2.0 * h < 0.0) throw std::invalid_argument("beta too small for central differences");
  MonomialPlanSet plan(family, {PlanRequest{g, {}}});
  const double inv_vol = 1.0 / family.volume;
  auto result = quenched_average_vec(
      family, scheme, 1, workers, [&](const DisorderSample& s, double* out) {
        EnergyTable energy(family, s);
        auto value_at = [&](double b) {
          GibbsTable table(energy, b);
          double v = 0.0;
          plan.eval(table, &v);
          return v;
        };
        // Richardson-extrapolated central difference.
        double d = (8.0 * (value_at(beta + h) - value_at(beta - h)) -
                    (value_at(beta + 2.0 * h) - value_at(beta - 2.0 * h))) /
                   (12.0 * h);
        out[0] = -d * inv_vol;
      });
  return result.estimates[0];
}

QuenchedEstimate delta2_closed(const InteractionFamily& family, double beta, int replicas,
                               const OverlapMonomial& g, const Scheme& scheme, int workers) {
  require_replicas(replicas);
  BracketPlan bp(g, replicas);
  MonomialPlanSet plan(family, bp.requests);
  // out: [linear bracket, Omega(G), Omega(q12)]
  auto result = quenched_average_vec(
      family, scheme, 3, workers, [&](const DisorderSample& s, double* out) {
        std::vector<double> buf(static_cast<std::size_t>(plan.size()));
        GibbsTable table(family, s, beta);
        plan.eval(table, buf.data());
        out[0] = bp.bracket2_linear(buf.data());
        out[1] = buf[static_cast<std::size_t>(bp.idx_g)];
        out[2] = buf[static_cast<std::size_t>(bp.idx_q12)];
      });
  const double m0 = result.estimates[0].mean;
  const double m1 = result.estimates[1].mean;
  const double m2 = result.estimates[2].mean;
  const double factor = -beta * replicas;

  QuenchedEstimate e = result.estimates[0];
  e.mean = factor * (m0 + m1 * m2);
  e.stderr_ = 0.0;
  if (!result.mean_covariance.empty()) {
    const double grad[3] = {1.0, m2, m1};
    double var = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        var += grad[i] * grad[j] * result.mean_covariance[static_cast<std::size_t>(i * 3 + j)];
    e.stderr_ = std::abs(factor) * std::sqrt(std::max(0.0, var));
  }
  return e;
}

QuenchedEstimate delta2_definitional(const InteractionFamily& family, double beta, int replicas,
                                     const OverlapMonomial& g, const Scheme& scheme, int workers) {
  require_replicas(replicas);
  MonomialPlanSet plan(family, {PlanRequest{g, {}}});
  const double inv_vol = 1.0 / family.volume;
  // out: [u, Omega(G), u * Omega(G)]
  auto result = quenched_average_vec(
      family, scheme, 3, workers, [&](const DisorderSample& s, double* out) {
        GibbsTable table(family, s, beta);
        double gv = 0.0;
        plan.eval(table, &gv);
        double u = table.internal_energy() * inv_vol;
        out[0] = u;
        out[1] = gv;
        out[2] = u * gv;
      });
  const double mu = result.estimates[0].mean;
  const double mg = result.estimates[1].mean;
  const double mug = result.estimates[2].mean;
  const double r = replicas;

  QuenchedEstimate e = result.estimates[2];
  e.mean = r * (mug - mu * mg);
  e.stderr_ = 0.0;
  if (!result.mean_covariance.empty()) {
    const double grad[3] = {-r * mg, -r * mu, r};
    double var = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        var += grad[i] * grad[j] * result.mean_covariance[static_cast<std::size_t>(i * 3 + j)];
    e.stderr_ = std::sqrt(std::max(0.0, var));
  }
  return e;
}

DeltaReport delta1_dual(const InteractionFamily& family, double beta, int replicas,
                        const OverlapMonomial& g, const Scheme& scheme, int workers) {
  DeltaReport rep;
  rep.beta = beta;
  rep.replicas = replicas;
  rep.observable = g.str();
  rep.closed = delta1_closed(family, beta, replicas, g, scheme, workers);
  rep.definitional = delta1_definitional(family, beta, g, scheme, workers);
  rep.discrepancy = std::abs(rep.closed.mean - rep.definitional.mean);
  return rep;
}

DeltaReport delta2_dual(const InteractionFamily& family, double beta, int replicas,
                        const OverlapMonomial& g, const Scheme& scheme, int workers) {
  DeltaReport rep;
  rep.beta = beta;
  rep.replicas = replicas;
  rep.observable = g.str();
  rep.closed = delta2_closed(family, beta, replicas, g, scheme, workers);
  rep.definitional = delta2_definitional(family, beta, replicas, g, scheme, workers);
  rep.discrepancy = std::abs(rep.closed.mean - rep.definitional.mean);
  return rep;
}

SumRuleReport sum_rule_check(const InteractionFamily& family, double beta, int replicas,
                             const OverlapMonomial& g, const Scheme& scheme, int workers) {
  require_replicas(replicas);
  const int r = replicas;
  const std::size_t k = family.subsets.size();
  // Requests: Omega(G sigma_X^{(l)}) for every (l, X), then Omega(G).
  std::vector<PlanRequest> requests;
  for (int l = 1; l <= r; ++l)
    for (std::size_t x = 0; x < k; ++x)
      requests.push_back({g, {{l, family.subsets[x].mask}}});
  requests.push_back({g, {}});
  MonomialPlanSet plan(family, requests);

  const double inv_vol = 1.0 / family.volume;
  // out: [sum_l Omega(G h^{(l)}), u, Omega(G)]
  auto result = quenched_average_vec(
      family, scheme, 3, workers, [&](const DisorderSample& s, double* out) {
        std::vector<double> buf(static_cast<std::size_t>(plan.size()));
        GibbsTable table(family, s, beta);
        plan.eval(table, buf.data());
        double acc = 0.0;
        for (int l = 0; l < r; ++l)
          for (std::size_t x = 0; x < k; ++x)
            acc -= s.couplings[x] * buf[static_cast<std::size_t>(l) * k + x];
        out[0] = acc * inv_vol;
        out[1] = table.internal_energy() * inv_vol;
        out[2] = buf[static_cast<std::size_t>(plan.size()) - 1];
      });

  SumRuleReport rep;
  rep.direct = result.estimates[0].mean -
               r * result.estimates[1].mean * result.estimates[2].mean;
  rep.closed_sum = delta1_closed(family, beta, r, g, scheme, workers).mean +
                   delta2_closed(family, beta, r, g, scheme, workers).mean;
  rep.residual = std::abs(rep.closed_sum - rep.direct);
  return rep;
}

std::pair<ResidualCurve, ResidualCurve> gg_residuals(const InteractionFamily& family, int replicas,
                                                     const OverlapMonomial& g, double beta1,
                                                     double beta2, int grid_points,
                                                     Measure measure, const Scheme& scheme,
                                                     int workers) {
  require_replicas(replicas);
  BracketPlan bp(g, replicas);
  MonomialPlanSet plan(family, bp.requests);

  auto betas = beta_grid(beta1, beta2, grid_points, measure);
  ResidualCurve c1{measure, betas, {}, {}, 0.0, 0.0};
  ResidualCurve c2 = c1;
  c1.values.resize(betas.size());
  c1.stderrs.resize(betas.size());
  c2.values.resize(betas.size());
  c2.stderrs.resize(betas.size());

  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double beta = betas[i];
    // out: [bracket 1, bracket 2 linear part, Omega(G), Omega(q12)]
    auto result = quenched_average_vec(
        family, point_scheme(scheme, i), 4, workers,
        [&](const DisorderSample& s, double* out) {
          std::vector<double> buf(static_cast<std::size_t>(plan.size()));
          GibbsTable table(family, s, beta);
          plan.eval(table, buf.data());
          out[0] = bp.bracket1(buf.data());
          out[1] = bp.bracket2_linear(buf.data());
          out[2] = buf[static_cast<std::size_t>(bp.idx_g)];
          out[3] = buf[static_cast<std::size_t>(bp.idx_q12)];
        });
    c1.values[i] = result.estimates[0].mean;
    c1.stderrs[i] = result.estimates[0].stderr_;
    const double mg = result.estimates[2].mean;
    const double mq = result.estimates[3].mean;
    c2.values[i] = result.estimates[1].mean + mg * mq;
    c2.stderrs[i] = 0.0;
    if (!result.mean_covariance.empty()) {
      const double grad[4] = {0.0, 1.0, mq, mg};
      double var = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          var += grad[a] * grad[b] * result.mean_covariance[static_cast<std::size_t>(a * 4 + b)];
      c2.stderrs[i] = std::sqrt(std::max(0.0, var));
    }
  }

  auto w = integration_weights(betas.size(), grid_step(beta1, beta2, grid_points, measure));
  for (auto* c : {&c1, &c2}) {
    c->integral = weighted_sum(w, c->values);
    double var = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) var += w[i] * w[i] * c->stderrs[i] * c->stderrs[i];
    c->integral_stderr = std::sqrt(var);
  }
  return {std::move(c1), std::move(c2)};
}

std::pair<ResidualCurve, ResidualCurve> classical_identities(const InteractionFamily& family,
                                                             double beta1, double beta2,
                                                             int grid_points, Measure measure,
                                                             const Scheme& scheme, int workers) {
  auto q12 = OverlapMonomial::parse("q[1,2]");
  std::vector<PlanRequest> requests = {
      {q12, {}},
      {OverlapMonomial::parse("q[1,2]^2"), {}},
      {OverlapMonomial::parse("q[1,2]*q[2,3]"), {}},
      {OverlapMonomial::parse("q[1,2]*q[3,4]"), {}},
  };
  MonomialPlanSet plan(family, requests);

  auto betas = beta_grid(beta1, beta2, grid_points, measure);
  ResidualCurve c1{measure, betas, {}, {}, 0.0, 0.0};
  ResidualCurve c2 = c1;
  c1.values.resize(betas.size());
  c1.stderrs.resize(betas.size());
  c2.values.resize(betas.size());
  c2.stderrs.resize(betas.size());

  for (std::size_t i = 0; i < betas.size(); ++i) {
    const double beta = betas[i];
    auto result = quenched_average_vec(family, point_scheme(scheme, i), 4, workers,
                                       [&](const DisorderSample& s, double* out) {
                                         GibbsTable table(family, s, beta);
                                         plan.eval(table, out);
                                       });
    const double m0 = result.estimates[0].mean;
    const double m1 = result.estimates[1].mean;
    const double m2 = result.estimates[2].mean;
    const double m3 = result.estimates[3].mean;
    c1.values[i] = m2 - 0.5 * m1 - 0.5 * m0 * m0;
    c2.values[i] = m3 - m1 / 3.0 - 2.0 / 3.0 * m0 * m0;
    c1.stderrs[i] = 0.0;
    c2.stderrs[i] = 0.0;
    if (!result.mean_covariance.empty()) {
      const double g1[4] = {-m0, -0.5, 1.0, 0.0};
      const double g2[4] = {-4.0 / 3.0 * m0, -1.0 / 3.0, 0.0, 1.0};
      double v1 = 0.0, v2 = 0.0;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          double cab = result.mean_covariance[static_cast<std::size_t>(a * 4 + b)];
          v1 += g1[a] * g1[b] * cab;
          v2 += g2[a] * g2[b] * cab;
        }
      c1.stderrs[i] = std::sqrt(std::max(0.0, v1));
      c2.stderrs[i] = std::sqrt(std::max(0.0, v2));
    }
  }

  auto w = integration_weights(betas.size(), grid_step(beta1, beta2, grid_points, measure));
  for (auto* c : {&c1, &c2}) {
    c->integral = weighted_sum(w, c->values);
    double var = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) var += w[i] * w[i] * c->stderrs[i] * c->stderrs[i];
    c->integral_stderr = std::sqrt(var);
  }
  return {std::move(c1), std::move(c2)};
}

double free_energy_variance_bound_per_site(double beta, double cbar) {
  double b2 = beta * beta;
  return 0.25 * b2 * cbar + 35.0 / 36.0 * b2 * b2 * cbar * cbar;
}

VarianceReport free_energy_variance(const InteractionFamily& family, double beta, std::int64_t n,
                                    std::uint64_t seed, int workers) {
  auto values = quenched_samples(family, n, seed, 1, workers,
                                 [&](const DisorderSample& s, double* out) {
                                   GibbsTable table(family, s, beta);
                                   out[0] = table.log_z();
                                 });
  double bound = family.volume * free_energy_variance_bound_per_site(beta, family.cbar);
  auto rep = variance_report_from_samples(family, beta, std::move(values), bound, n, seed);
  return rep;
}

VarianceReport internal_energy_variance(const InteractionFamily& family, double beta,
                                        std::int64_t n, std::uint64_t seed, int workers) {
  const double inv_vol = 1.0 / family.volume;
  auto values = quenched_samples(family, n, seed, 1, workers,
                                 [&](const DisorderSample& s, double* out) {
                                   GibbsTable table(family, s, beta);
                                   out[0] = table.internal_energy() * inv_vol;
                                 });
  double bound = 15.0 * beta * beta * family.cbar * family.cbar;
  return variance_report_from_samples(family, beta, std::move(values), bound, n, seed);
}

EnergyIdentityReport internal_energy_identity_check(const InteractionFamily& family, double beta,
                                                    int order) {
  const std::size_t k = family.subsets.size();
  // out: [sum_X J_X omega_X, U, omega_X^2 ...]
  auto result = quenched_average_vec(
      family, Scheme::quadrature(order), static_cast<int>(k) + 2, 1,
      [&](const DisorderSample& s, double* out) {
        GibbsTable table(family, s, beta);
        double acc = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
          double w = table.omega(family.subsets[x].mask);
          acc += s.couplings[x] * w;
          out[2 + x] = w * w;
        }
        out[0] = acc;
        out[1] = table.internal_energy();
      });

  EnergyIdentityReport rep;
  rep.beta = beta;
  rep.lhs = result.estimates[0].mean;
  rep.enumerated = result.estimates[1].mean;
  double rhs = 0.0;
  for (std::size_t x = 0; x < k; ++x)
    rhs += beta * family.subsets[x].variance * (1.0 - result.estimates[2 + x].mean);
  rep.rhs = rhs;
  rep.residual = std::max(std::abs(rep.lhs - rep.rhs), std::abs(rep.enumerated + rep.lhs));
  return rep;
}

SecondMomentReport internal_energy_second_moment_check(const InteractionFamily& family,
                                                       double beta, int order) {
  const std::size_t k = family.subsets.size();
  // out: [U^2, six-term double sum, diagonal correction]
  auto result = quenched_average_vec(
      family, Scheme::quadrature(order), 3, 1, [&](const DisorderSample& s, double* out) {
        GibbsTable table(family, s, beta);
        std::vector<double> w(k);
        for (std::size_t x = 0; x < k; ++x) w[x] = table.omega(family.subsets[x].mask);
        double pair_sum = 0.0;
        double diag = 0.0;
        for (std::size_t x = 0; x < k; ++x) {
          const double vx = family.subsets[x].variance;
          diag += vx * w[x] * w[x];
          for (std::size_t y = 0; y < k; ++y) {
            const double vy = family.subsets[y].variance;
            double wxy = table.omega(family.subsets[x].mask ^ family.subsets[y].mask);
            double bracket = 1.0 - w[x] * w[x] - w[y] * w[y] + 6.0 * w[x] * w[x] * w[y] * w[y] -
                             6.0 * w[x] * w[y] * wxy + wxy * wxy;
            pair_sum += beta * beta * vx * vy * bracket;
          }
        }
        double u = table.internal_energy();
        out[0] = u * u;
        out[1] = pair_sum;
        out[2] = diag;
      });

  SecondMomentReport rep;
  rep.beta = beta;
  rep.lhs = result.estimates[0].mean;
  rep.rhs_as_printed = result.estimates[1].mean;
  rep.rhs = result.estimates[1].mean + result.estimates[2].mean;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.residual_as_printed = std::abs(rep.lhs - rep.rhs_as_printed);
  return rep;
}

MomentTable compute_moment_table(const InteractionFamily& family, std::vector<double> betas,
                                 std::int64_t n_samples, std::uint64_t seed, int workers) {
  if (n_samples < 2) throw std::invalid_argument("moment table needs at least 2 samples");
  std::vector<PlanRequest> requests = {
      {OverlapMonomial::parse("q[1,2]"), {}},
      {OverlapMonomial::parse("q[1,2]^2"), {}},
      {OverlapMonomial::parse("q[1,2]*q[2,3]"), {}},
      {OverlapMonomial::parse("q[1,2]*q[3,4]"), {}},
  };
  MonomialPlanSet plan(family, requests);

  MomentTable table;
  table.betas = std::move(betas);
  table.n_samples = n_samples;
  table.seed = seed;
  const std::size_t nb = table.betas.size();
  table.data.assign(static_cast<std::size_t>(n_samples) * nb * 4, 0.0);

  parallel_for(static_cast<std::size_t>(n_samples), workers, [&](std::size_t i) {
    auto sample = sample_disorder(family, seed, static_cast<std::int64_t>(i));
    EnergyTable energy(family, sample);
    for (std::size_t b = 0; b < nb; ++b) {
      GibbsTable gibbs(energy, table.betas[b]);
      plan.eval(gibbs, table.data.data() + (i * nb + b) * 4);
    }
  });
  return table;
}

namespace {

// Per-beta means of the four stored moments over a subset of samples.
// indices == nullptr means the full sample in natural order.
void table_means(const MomentTable& table, const std::size_t* indices, std::size_t n,
                 std::vector<double>& means) {
  const std::size_t nb = table.betas.size();
  means.assign(nb * 4, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t s = indices ? indices[j] : j;
    const double* row = table.data.data() + s * nb * 4;
    for (std::size_t c = 0; c < nb * 4; ++c) means[c] += row[c];
  }
  for (double& v : means) v /= static_cast<double>(n);
}

double classical_stat_from_means(const std::vector<double>& means, int which,
                                 const std::vector<double>& weights) {
  const std::size_t nb = weights.size();
  double total_w = 0.0;
  double acc = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    const double* m = means.data() + b * 4;
    double r = which == 1 ? m[2] - 0.5 * m[1] - 0.5 * m[0] * m[0]
                          : m[3] - m[1] / 3.0 - 2.0 / 3.0 * m[0] * m[0];
    acc += weights[b] * std::abs(r);
    total_w += weights[b];
  }
  return acc / total_w;
}

double gg_stat_from_means(const std::vector<double>& means, int which,
                          const std::vector<double>& weights) {
  const std::size_t nb = weights.size();
  double acc = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    const double* m = means.data() + b * 4;
    // G = q12, R = 2 brackets of the two-step decomposition.
    double r = which == 1 ? 2.0 * m[1] - 8.0 * m[2] + 6.0 * m[3]
                          : 2.0 * m[2] - 3.0 * m[3] + m[0] * m[0];
    acc += weights[b] * r;
  }
  return std::abs(acc);
}

BootstrapStat bootstrap_table_stat(const MomentTable& table, Measure measure, std::uint64_t seed,
                                   int resamples,
                                   const std::function<double(const std::vector<double>&,
                                                              const std::vector<double>&)>& stat) {
  const std::size_t nb = table.betas.size();
  if (nb < 2) throw std::invalid_argument("moment table needs at least 2 beta points");
  double b1 = table.betas.front(), b2 = table.betas.back();
  auto weights =
      integration_weights(nb, grid_step(b1, b2, static_cast<int>(nb), measure));

  const auto n = static_cast<std::size_t>(table.n_samples);
  std::vector<double> means;
  table_means(table, nullptr, n, means);

  BootstrapStat out;
  out.value = stat(means, weights);

  std::vector<double> stats(static_cast<std::size_t>(resamples));
  std::vector<std::size_t> idx(n);
  for (std::size_t r = 0; r < stats.size(); ++r) {
    for (std::size_t i = 0; i < n; ++i)
      idx[i] = static_cast<std::size_t>(rng::counter_hash(seed ^ 0xb007'57a7ULL, r, i) % n);
    table_means(table, idx.data(), n, means);
    stats[r] = stat(means, weights);
  }
  auto bs = summarize_bootstrap(std::move(stats));
  out.ci_lo = bs.ci_lo;
  out.ci_hi = bs.ci_hi;
  out.stderr_ = bs.stderr_;
  return out;
}

}  // namespace

BootstrapStat classical_integral_stat(const MomentTable& table, int which, Measure measure,
                                      std::uint64_t seed, int resamples) {
  if (which != 1 && which != 2) throw std::invalid_argument("identity index must be 1 or 2");
  return bootstrap_table_stat(table, measure, seed, resamples,
                              [which](const std::vector<double>& m,
                                      const std::vector<double>& w) {
                                return classical_stat_from_means(m, which, w);
                              });
}

BootstrapStat gg_integral_stat(const MomentTable& table, int which, Measure measure,
                               std::uint64_t seed, int resamples) {
  if (which != 1 && which != 2) throw std::invalid_argument("identity index must be 1 or 2");
  return bootstrap_table_stat(table, measure, seed, resamples,
                              [which](const std::vector<double>& m,
                                      const std::vector<double>& w) {
                                return gg_stat_from_means(m, which, w);
                              });
}

}  // namespace gg
