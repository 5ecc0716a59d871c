#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "gg/disorder.hpp"
#include "gg/model.hpp"
#include "gg/rng.hpp"

namespace gg {

// Per-state energies H(s) for one disorder sample; beta-independent, so one
// EnergyTable serves a whole beta sweep.
struct EnergyTable {
  EnergyTable(const InteractionFamily& family, const DisorderSample& sample);
  int volume = 0;
  std::vector<double> energies;  // natural binary state order
};

// Exact-enumeration Gibbs state at one (sample, beta). Log-domain
// throughout. The omega cache and the draw CDF are lazily built and not
// synchronized: use one table per thread.
class GibbsTable {
 public:
  GibbsTable(const InteractionFamily& family, const DisorderSample& sample, double beta);
  GibbsTable(const EnergyTable& energy, double beta);

  double beta() const { return beta_; }
  int volume() const { return volume_; }
  std::size_t n_states() const { return probs_.size(); }
  double log_z() const { return log_z_; }
  std::span<const double> energies() const { return energies_; }
  std::span<const double> probabilities() const { return probs_; }

  // Gibbs expectation of the parity product sigma_M, cached per mask.
  double omega(std::uint32_t mask) const;
  // omega of the XOR of several subset masks.
  double omega_product(std::span<const std::uint32_t> masks) const;

  // Gibbs-weighted mean energy U.
  double internal_energy() const;

  // Exact sample via inverse CDF.
  SpinConfiguration draw(rng::Stream& stream) const;

 private:
  void init(std::span<const double> energies, double beta);

  double beta_ = 0.0;
  int volume_ = 0;
  double log_z_ = 0.0;
  std::vector<double> energies_;
  std::vector<double> probs_;
  mutable std::unordered_map<std::uint32_t, double> omega_cache_;
  mutable std::vector<double> cdf_;
};

// A = log Z.
double free_energy_log(const GibbsTable& table);
// F = -A/beta; throws std::domain_error at beta == 0.
double free_energy(const GibbsTable& table);

}  // namespace gg
