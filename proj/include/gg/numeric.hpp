#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace gg {

// Pairwise (tree) summation. Result is independent of how callers
// partition work, provided the input order is fixed.
double pairwise_sum(std::span<const double> x);

// Strided variant: sums x[offset], x[offset+stride], ... (n terms).
double pairwise_sum_strided(const double* x, std::size_t n, std::size_t stride);

// log(sum_i exp(x[i])) with max-shift; x must be nonempty.
double log_sum_exp(std::span<const double> x);

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Mean and standard error of the mean, both via pairwise sums.
MeanStderr mean_stderr(std::span<const double> x);

// Unbiased sample variance.
double sample_variance(std::span<const double> x);

// Composite quadrature weights on a uniform grid of n points with spacing
// `step`: Simpson when n is odd (n >= 3), trapezoid otherwise.
std::vector<double> integration_weights(std::size_t n, double step);

// Weighted dot in fixed order (pairwise over products).
double weighted_sum(std::span<const double> w, std::span<const double> v);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  bool valid = false;
};

// Least-squares line through (x_i, y_i); needs >= 2 points for the fit and
// >= 3 for a stderr.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace gg
