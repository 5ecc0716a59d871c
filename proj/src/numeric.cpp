#include "gg/numeric.hpp"

#include <algorithm>

#include "gg/simd.hpp"

namespace gg {

namespace {

double pairwise_rec(const double* x, std::size_t n, std::size_t stride) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i * stride];
    return s;
  }
  std::size_t half = n / 2;
  return pairwise_rec(x, half, stride) + pairwise_rec(x + half * stride, n - half, stride);
}

}  // namespace

double pairwise_sum(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return pairwise_rec(x.data(), x.size(), 1);
}

double pairwise_sum_strided(const double* x, std::size_t n, std::size_t stride) {
  if (n == 0) return 0.0;
  return pairwise_rec(x, n, stride);
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("log_sum_exp: empty input");
  double m = simd::max_value(x.data(), x.size());
  if (!std::isfinite(m)) return m;
  // 4-lane blocked accumulation, same structure for every caller.
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t n4 = x.size() & ~std::size_t(3);
  for (std::size_t i = 0; i < n4; i += 4)
    for (std::size_t j = 0; j < 4; ++j) acc[j] += std::exp(x[i + j] - m);
  for (std::size_t i = n4; i < x.size(); ++i) acc[0] += std::exp(x[i] - m);
  return m + std::log((acc[0] + acc[1]) + (acc[2] + acc[3]));
}

MeanStderr mean_stderr(std::span<const double> x) {
  MeanStderr r;
  if (x.empty()) return r;
  r.mean = pairwise_sum(x) / static_cast<double>(x.size());
  if (x.size() < 2) return r;
  std::vector<double> dev2(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - r.mean;
    dev2[i] = d * d;
  }
  double var = pairwise_sum(dev2) / static_cast<double>(x.size() - 1);
  r.stderr_ = std::sqrt(var / static_cast<double>(x.size()));
  return r;
}

double sample_variance(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  double mean = pairwise_sum(x) / static_cast<double>(x.size());
  std::vector<double> dev2(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = x[i] - mean;
    dev2[i] = d * d;
  }
  return pairwise_sum(dev2) / static_cast<double>(x.size() - 1);
}

std::vector<double> integration_weights(std::size_t n, double step) {
  if (n == 0) throw std::invalid_argument("integration_weights: empty grid");
  std::vector<double> w(n, 0.0);
  if (n == 1) return w;
  if (n >= 3 && n % 2 == 1) {
    // composite Simpson
    w.front() = w.back() = step / 3.0;
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = (i % 2 == 1 ? 4.0 : 2.0) * step / 3.0;
  } else {
    w.front() = w.back() = step / 2.0;
    for (std::size_t i = 1; i + 1 < n; ++i) w[i] = step;
  }
  return w;
}

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  if (w.size() != v.size()) throw std::invalid_argument("weighted_sum: size mismatch");
  std::vector<double> p(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) p[i] = w[i] * v[i];
  return pairwise_sum(p);
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  LineFit f;
  if (x.size() != y.size() || x.size() < 2) return f;
  auto n = static_cast<double>(x.size());
  double sx = pairwise_sum(x), sy = pairwise_sum(y);
  double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) return f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.valid = true;
  if (x.size() >= 3) {
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double r = y[i] - (f.intercept + f.slope * x[i]);
      ss += r * r;
    }
    f.slope_stderr = std::sqrt(ss / (n - 2.0) / sxx);
  }
  return f;
}

}  // namespace gg
