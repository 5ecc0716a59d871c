#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gg {

// Enumeration works on full 2^N state tables; 24 sites is the hard cap.
inline constexpr int kMaxVolume = 24;
inline constexpr int kMaxRemVolume = 20;

struct SpinConfiguration {
  std::uint32_t bits = 0;  // bit n set <=> spin n is +1
  int volume = 0;

  // Parity product over the sites in `mask`, in {-1, +1}.
  double parity(std::uint32_t mask) const;
};

struct Subset {
  std::uint32_t mask = 0;   // nonempty site set
  double variance = 0.0;    // Delta^2_X >= 0
};

// The set of interacting subsets with their coupling variances. Immutable
// after construction; shareable across threads.
struct InteractionFamily {
  std::vector<Subset> subsets;  // canonical order: ascending mask value
  int volume = 0;
  std::string preset;           // e.g. "sk", "ea", "custom"
  std::string geometry;         // "chain", "torus", "complete", ...
  double cbar = 0.0;            // preset stability constant

  std::size_t subset_count() const { return subsets.size(); }
  // Sum of all variances, pairwise-summed.
  double total_variance() const;
  // total_variance / volume; the self-overlap constant q_{a,a}.
  double per_site_variance() const;
};

struct StabilityReport {
  double per_site_variance = 0.0;
  double cbar = 0.0;
  bool satisfied = false;
};

// Presets. EA and long-range live on a d-dimensional torus (or open box)
// of side L with L^d <= kMaxVolume sites.
InteractionFamily make_ea(int d, int side, bool periodic = true);
InteractionFamily make_long_range(double alpha, int d, int side, bool periodic = true);
// sk_stddev_convention treats the 1/N normalization as the standard
// deviation (variance 1/N^2) instead of the default variance 1/N.
InteractionFamily make_sk(int n, bool sk_stddev_convention = false);
InteractionFamily make_p_spin(int n, int p);
InteractionFamily make_rem(int n);
InteractionFamily make_custom(std::vector<Subset> subsets, int volume, double cbar);

// Validates invariants (sorted unique nonempty masks within the volume,
// nonnegative variances, at least one positive). Throws std::invalid_argument.
void validate_family(const InteractionFamily& family);

struct Covariance {
  double raw = 0.0;
  double normalized = 0.0;
};

// C(sigma, tau) = sum_X Delta^2_X sigma_X tau_X and its /|volume| version.
Covariance covariance(const InteractionFamily& family, const SpinConfiguration& sigma,
                      const SpinConfiguration& tau);

StabilityReport stability_report(const InteractionFamily& family);

}  // namespace gg
