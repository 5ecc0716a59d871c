#include "gg/disorder.hpp"

#include <cmath>
#include <stdexcept>

#include "gg/numeric.hpp"
#include "gg/parallel.hpp"
#include "gg/quadrature.hpp"
#include "gg/rng.hpp"

namespace gg {

DisorderSample sample_disorder(const InteractionFamily& family, std::uint64_t seed,
                               std::int64_t index) {
  if (index < 0) throw std::invalid_argument("sample index must be >= 0");
  DisorderSample s;
  s.index = index;
  s.seed = seed;
  s.couplings.resize(family.subsets.size());
  for (std::size_t k = 0; k < family.subsets.size(); ++k) {
    double var = family.subsets[k].variance;
    s.couplings[k] =
        var > 0.0 ? std::sqrt(var) * rng::gaussian(seed, static_cast<std::uint64_t>(index), k)
                  : 0.0;
  }
  return s;
}

namespace {

std::vector<int> active_dims(const InteractionFamily& family) {
  std::vector<int> dims;
  for (std::size_t k = 0; k < family.subsets.size(); ++k)
    if (family.subsets[k].variance > 0.0) dims.push_back(static_cast<int>(k));
  return dims;
}

std::int64_t node_count_or_throw(std::size_t n_dims, int order) {
  std::int64_t total = 1;
  for (std::size_t i = 0; i < n_dims; ++i) {
    if (total > kQuadratureNodeCap / order)
      throw std::runtime_error("quadrature infeasible: too many coupling dimensions");
    total *= order;
  }
  return total;
}

constexpr std::int64_t kChunk = 4096;

}  // namespace

std::int64_t quadrature_node_count(const InteractionFamily& family, int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  return node_count_or_throw(active_dims(family).size(), order);
}

bool quadrature_feasible(const InteractionFamily& family, int order) {
  try {
    quadrature_node_count(family, order);
    return true;
  } catch (const std::runtime_error&) {
    return false;
  }
}

QuenchedVec quenched_average_vec(const InteractionFamily& family, const Scheme& scheme, int n_out,
                                 int workers, const SampleFn& f) {
  if (n_out < 1) throw std::invalid_argument("n_out must be >= 1");
  QuenchedVec result;
  result.estimates.resize(static_cast<std::size_t>(n_out));
  result.mean_covariance.assign(static_cast<std::size_t>(n_out) * n_out, 0.0);

  if (scheme.method == Method::monte_carlo) {
    std::int64_t n = scheme.n_samples;
    if (n < 2) throw std::invalid_argument("monte-carlo scheme needs n >= 2");
    std::vector<double> values(static_cast<std::size_t>(n) * n_out);
    parallel_for(n, workers, [&](std::int64_t i) {
      DisorderSample s = sample_disorder(family, scheme.seed, i);
      f(s, values.data() + static_cast<std::size_t>(i) * n_out);
    });
    std::vector<double> scratch(static_cast<std::size_t>(n));
    std::vector<double> means(static_cast<std::size_t>(n_out));
    for (int c = 0; c < n_out; ++c) {
      means[c] = pairwise_sum_strided(values.data() + c, static_cast<std::size_t>(n),
                                      static_cast<std::size_t>(n_out)) /
                 static_cast<double>(n);
    }
    for (int a = 0; a < n_out; ++a) {
      for (int b = a; b < n_out; ++b) {
        for (std::int64_t i = 0; i < n; ++i) {
          const double* row = values.data() + static_cast<std::size_t>(i) * n_out;
          scratch[static_cast<std::size_t>(i)] = (row[a] - means[a]) * (row[b] - means[b]);
        }
        double cov = pairwise_sum(scratch) / static_cast<double>(n - 1) / static_cast<double>(n);
        result.mean_covariance[static_cast<std::size_t>(a) * n_out + b] = cov;
        result.mean_covariance[static_cast<std::size_t>(b) * n_out + a] = cov;
      }
    }
    for (int c = 0; c < n_out; ++c) {
      auto& e = result.estimates[static_cast<std::size_t>(c)];
      e.mean = means[static_cast<std::size_t>(c)];
      e.stderr_ = std::sqrt(result.mean_covariance[static_cast<std::size_t>(c) * n_out + c]);
      e.n = n;
      e.method = Method::monte_carlo;
      e.seed = scheme.seed;
      e.order = 0;
    }
    return result;
  }

  // Tensor-product Gauss-Hermite expectation.
  auto dims = active_dims(family);
  std::int64_t total = node_count_or_throw(dims.size(), scheme.order);
  GaussHermite rule(scheme.order);
  std::int64_t n_chunks = (total + kChunk - 1) / kChunk;
  std::vector<double> chunk_sums(static_cast<std::size_t>(n_chunks) * n_out);

  parallel_for(n_chunks, workers, [&](std::int64_t c) {
    std::int64_t begin = c * kChunk;
    std::int64_t end = std::min(begin + kChunk, total);
    std::size_t len = static_cast<std::size_t>(end - begin);
    std::vector<double> buf(len * static_cast<std::size_t>(n_out));
    DisorderSample s;
    s.seed = 0;
    s.couplings.assign(family.subsets.size(), 0.0);
    for (std::int64_t idx = begin; idx < end; ++idx) {
      std::int64_t rest = idx;
      double w = 1.0;
      for (std::size_t dpos = 0; dpos < dims.size(); ++dpos) {
        int digit = static_cast<int>(rest % scheme.order);
        rest /= scheme.order;
        int k = dims[dpos];
        s.couplings[static_cast<std::size_t>(k)] =
            std::sqrt(family.subsets[static_cast<std::size_t>(k)].variance) *
            rule.nodes[static_cast<std::size_t>(digit)];
        w *= rule.weights[static_cast<std::size_t>(digit)];
      }
      s.index = idx;
      double* out = buf.data() + static_cast<std::size_t>(idx - begin) * n_out;
      f(s, out);
      for (int col = 0; col < n_out; ++col) out[col] *= w;
    }
    for (int col = 0; col < n_out; ++col) {
      chunk_sums[static_cast<std::size_t>(c) * n_out + col] =
          pairwise_sum_strided(buf.data() + col, len, static_cast<std::size_t>(n_out));
    }
  });

  for (int col = 0; col < n_out; ++col) {
    auto& e = result.estimates[static_cast<std::size_t>(col)];
    e.mean = pairwise_sum_strided(chunk_sums.data() + col, static_cast<std::size_t>(n_chunks),
                                  static_cast<std::size_t>(n_out));
    e.stderr_ = 0.0;
    e.n = total;
    e.method = Method::quadrature;
    e.seed = 0;
    e.order = scheme.order;
  }
  return result;
}

QuenchedEstimate quenched_average(const InteractionFamily& family, const Scheme& scheme,
                                  int workers,
                                  const std::function<double(const DisorderSample&)>& f) {
  auto r = quenched_average_vec(family, scheme, 1, workers,
                                [&](const DisorderSample& s, double* out) { out[0] = f(s); });
  return r.estimates[0];
}

std::vector<double> quenched_samples(const InteractionFamily& family, std::int64_t n,
                                     std::uint64_t seed, int n_out, int workers,
                                     const SampleFn& f) {
  if (n < 1) throw std::invalid_argument("need n >= 1 samples");
  std::vector<double> values(static_cast<std::size_t>(n) * n_out);
  parallel_for(n, workers, [&](std::int64_t i) {
    DisorderSample s = sample_disorder(family, seed, i);
    f(s, values.data() + static_cast<std::size_t>(i) * n_out);
  });
  return values;
}

double wick_residual(const InteractionFamily& family, const WickFn& psi, int order) {
  const int k = static_cast<int>(family.subsets.size());
  if (static_cast<std::size_t>(active_dims(family).size()) > 3)
    throw std::runtime_error("wick_residual: more than 3 active couplings");
  quadrature_node_count(family, order);  // feasibility
  const double h = 1e-5;

  // outputs: k values of J_i*psi, k*k second moments, k derivative averages
  int n_out = k + k * k + k;
  auto eval = [&](const DisorderSample& s, double* out) {
    std::vector<double> j(s.couplings.begin(), s.couplings.end());
    double base = psi.f(j);
    for (int i = 0; i < k; ++i) out[i] = j[static_cast<std::size_t>(i)] * base;
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        out[k + a * k + b] = j[static_cast<std::size_t>(a)] * j[static_cast<std::size_t>(b)];
    for (int d = 0; d < k; ++d) {
      auto central = [&](double step) {
        double saved = j[static_cast<std::size_t>(d)];
        j[static_cast<std::size_t>(d)] = saved + step;
        double fp = psi.f(j);
        j[static_cast<std::size_t>(d)] = saved - step;
        double fm = psi.f(j);
        j[static_cast<std::size_t>(d)] = saved;
        return (fp - fm) / (2.0 * step);
      };
      double dh = central(h);
      double dh2 = central(h / 2.0);
      out[k + k * k + d] = (4.0 * dh2 - dh) / 3.0;  // one Richardson step
    }
  };

  auto r = quenched_average_vec(family, Scheme::quadrature(order), n_out, 1, eval);
  double max_resid = 0.0;
  for (int i = 0; i < k; ++i) {
    double lhs = r.estimates[static_cast<std::size_t>(i)].mean;
    double rhs = 0.0;
    for (int jdim = 0; jdim < k; ++jdim) {
      rhs += r.estimates[static_cast<std::size_t>(k + i * k + jdim)].mean *
             r.estimates[static_cast<std::size_t>(k + k * k + jdim)].mean;
    }
    max_resid = std::max(max_resid, std::abs(lhs - rhs));
  }
  return max_resid;
}

}  // namespace gg
