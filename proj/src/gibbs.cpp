#include "gg/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gg/numeric.hpp"
#include "gg/simd.hpp"

namespace gg {

EnergyTable::EnergyTable(const InteractionFamily& family, const DisorderSample& sample) {
  if (family.volume > kMaxVolume) throw std::invalid_argument("volume over enumeration cap");
  if (sample.couplings.size() != family.subsets.size())
    throw std::invalid_argument("coupling count does not match family");
  volume = family.volume;
  std::size_t n = std::size_t{1} << volume;
  energies.assign(n, 0.0);
  // H(s) = -sum_X J_X sigma_X(s)
  for (std::size_t k = 0; k < family.subsets.size(); ++k) {
    double j = sample.couplings[k];
    if (j != 0.0) simd::accumulate_signed(energies.data(), n, -j, family.subsets[k].mask);
  }
}

GibbsTable::GibbsTable(const InteractionFamily& family, const DisorderSample& sample, double beta)
    : GibbsTable(EnergyTable(family, sample), beta) {}

GibbsTable::GibbsTable(const EnergyTable& energy, double beta) {
  volume_ = energy.volume;
  energies_ = energy.energies;
  init(energies_, beta);
}

void GibbsTable::init(std::span<const double> energies, double beta) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta must be >= 0");
  beta_ = beta;
  std::size_t n = energies.size();
  std::vector<double> lw(n);
  for (std::size_t s = 0; s < n; ++s) lw[s] = -beta * energies[s];
  log_z_ = log_sum_exp(lw);
  probs_.resize(n);
  for (std::size_t s = 0; s < n; ++s) probs_[s] = std::exp(lw[s] - log_z_);
}

double GibbsTable::omega(std::uint32_t mask) const {
  if (mask == 0) return 1.0;
  auto it = omega_cache_.find(mask);
  if (it != omega_cache_.end()) return it->second;
  double v = simd::dot_signed(probs_.data(), probs_.size(), mask);
  omega_cache_.emplace(mask, v);
  return v;
}

double GibbsTable::omega_product(std::span<const std::uint32_t> masks) const {
  std::uint32_t m = 0;
  for (auto x : masks) m ^= x;
  return omega(m);
}

double GibbsTable::internal_energy() const {
  return simd::dot(energies_.data(), probs_.data(), probs_.size());
}

SpinConfiguration GibbsTable::draw(rng::Stream& stream) const {
  if (cdf_.empty()) {
    cdf_.resize(probs_.size());
    double acc = 0.0;
    for (std::size_t s = 0; s < probs_.size(); ++s) {
      acc += probs_[s];
      cdf_[s] = acc;
    }
    cdf_.back() = 1.0;
  }
  double u = stream.next_u01();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  std::size_t s = static_cast<std::size_t>(it - cdf_.begin());
  if (s >= probs_.size()) s = probs_.size() - 1;
  return SpinConfiguration{static_cast<std::uint32_t>(s), volume_};
}

double free_energy_log(const GibbsTable& table) { return table.log_z(); }

double free_energy(const GibbsTable& table) {
  if (table.beta() == 0.0) throw std::domain_error("free energy undefined at beta = 0");
  return -table.log_z() / table.beta();
}

}  // namespace gg
