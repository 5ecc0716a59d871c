#include "gg/model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "gg/numeric.hpp"

namespace gg {

double SpinConfiguration::parity(std::uint32_t mask) const {
  return (std::popcount(bits & mask) & 1u) ? -1.0 : 1.0;
}

double InteractionFamily::total_variance() const {
  std::vector<double> v(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) v[i] = subsets[i].variance;
  return pairwise_sum(v);
}

double InteractionFamily::per_site_variance() const {
  return total_variance() / static_cast<double>(volume);
}

void validate_family(const InteractionFamily& family) {
  if (family.volume < 1 || family.volume > kMaxVolume)
    throw std::invalid_argument("family volume out of range");
  if (family.subsets.empty()) throw std::invalid_argument("family has no subsets");
  std::uint32_t site_mask = family.volume == 32 ? ~0u : (1u << family.volume) - 1u;
  std::uint32_t prev = 0;
  bool first = true;
  for (const auto& s : family.subsets) {
    if (s.mask == 0) throw std::invalid_argument("empty subset in family");
    if ((s.mask & ~site_mask) != 0) throw std::invalid_argument("subset outside volume");
    if (!(s.variance >= 0.0)) throw std::invalid_argument("negative subset variance");
    if (!first && s.mask <= prev) throw std::invalid_argument("subsets not in canonical order");
    prev = s.mask;
    first = false;
  }
}

namespace {

void sort_and_check(InteractionFamily& family) {
  std::sort(family.subsets.begin(), family.subsets.end(),
            [](const Subset& a, const Subset& b) { return a.mask < b.mask; });
  validate_family(family);
}

int checked_sites(int d, int side) {
  if (d < 1 || d > 3) throw std::invalid_argument("lattice dimension must be 1..3");
  if (side < 2) throw std::invalid_argument("side length must be >= 2");
  std::int64_t n = 1;
  for (int i = 0; i < d; ++i) n *= side;
  if (n > kMaxVolume) throw std::invalid_argument("lattice volume exceeds enumeration cap");
  return static_cast<int>(n);
}

std::uint32_t pair_mask(int a, int b) { return (1u << a) | (1u << b); }

void decode(int site, int d, int side, int* coord) {
  for (int i = 0; i < d; ++i) {
    coord[i] = site % side;
    site /= side;
  }
}

int encode(const int* coord, int d, int side) {
  int s = 0;
  for (int i = d - 1; i >= 0; --i) s = s * side + coord[i];
  return s;
}

}  // namespace

InteractionFamily make_ea(int d, int side, bool periodic) {
  int n = checked_sites(d, side);
  InteractionFamily f;
  f.volume = n;
  f.preset = "ea";
  f.geometry = periodic ? "torus" : "box";
  f.cbar = static_cast<double>(d);
  int coord[3], nb[3];
  for (int site = 0; site < n; ++site) {
    decode(site, d, side, coord);
    for (int dim = 0; dim < d; ++dim) {
      if (coord[dim] + 1 >= side && !periodic) continue;
      for (int i = 0; i < d; ++i) nb[i] = coord[i];
      nb[dim] = (coord[dim] + 1) % side;
      int other = encode(nb, d, side);
      if (other == site) continue;  // side == 2 periodic: bond wraps onto itself
      f.subsets.push_back({pair_mask(site, other), 1.0});
    }
  }
  // side == 2 periodic counts each bond from both ends; keep one copy
  std::sort(f.subsets.begin(), f.subsets.end(),
            [](const Subset& a, const Subset& b) { return a.mask < b.mask; });
  f.subsets.erase(std::unique(f.subsets.begin(), f.subsets.end(),
                              [](const Subset& a, const Subset& b) { return a.mask == b.mask; }),
                  f.subsets.end());
  validate_family(f);
  return f;
}

InteractionFamily make_long_range(double alpha, int d, int side, bool periodic) {
  if (!(alpha > 0.5)) throw std::invalid_argument("long-range alpha must exceed 1/2");
  int n = checked_sites(d, side);
  InteractionFamily f;
  f.volume = n;
  f.preset = "long_range";
  f.geometry = periodic ? "torus" : "box";
  f.cbar = std::pow(2.0 * alpha - 1.0, -static_cast<double>(d));
  int ca[3], cb[3];
  for (int a = 0; a < n; ++a) {
    decode(a, d, side, ca);
    for (int b = a + 1; b < n; ++b) {
      decode(b, d, side, cb);
      double r2 = 0.0;
      for (int i = 0; i < d; ++i) {
        int diff = std::abs(ca[i] - cb[i]);
        if (periodic) diff = std::min(diff, side - diff);
        r2 += static_cast<double>(diff) * diff;
      }
      double dist = std::sqrt(r2);
      f.subsets.push_back({pair_mask(a, b), std::pow(dist, -2.0 * d * alpha)});
    }
  }
  sort_and_check(f);
  return f;
}

InteractionFamily make_sk(int n, bool sk_stddev_convention) {
  if (n < 2 || n > kMaxVolume) throw std::invalid_argument("SK size out of range");
  InteractionFamily f;
  f.volume = n;
  f.preset = "sk";
  f.geometry = "complete";
  f.cbar = 1.0;
  double var = sk_stddev_convention ? 1.0 / (static_cast<double>(n) * n) : 1.0 / n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) f.subsets.push_back({pair_mask(a, b), var});
  sort_and_check(f);
  return f;
}

InteractionFamily make_p_spin(int n, int p) {
  if (n < 2 || n > kMaxVolume) throw std::invalid_argument("p-spin size out of range");
  if (p < 1 || p > n) throw std::invalid_argument("p-spin requires 1 <= p <= N");
  InteractionFamily f;
  f.volume = n;
  f.preset = "p_spin";
  f.geometry = "complete";
  f.cbar = 1.0;
  double var = std::pow(static_cast<double>(n), -p);
  // enumerate all masks with popcount p
  for (std::uint32_t m = 1; m < (1u << n); ++m) {
    if (std::popcount(m) == p) f.subsets.push_back({m, var});
    if (f.subsets.size() > 2'000'000) throw std::invalid_argument("p-spin subset count too large");
  }
  sort_and_check(f);
  return f;
}

InteractionFamily make_rem(int n) {
  if (n < 1 || n > kMaxRemVolume) throw std::invalid_argument("REM size out of range (cap 20)");
  InteractionFamily f;
  f.volume = n;
  f.preset = "rem";
  f.geometry = "complete";
  f.cbar = 1.0;
  double var = static_cast<double>(n) * std::pow(2.0, -n);
  f.subsets.reserve((std::size_t{1} << n) - 1);
  for (std::uint32_t m = 1; m < (1u << n); ++m) f.subsets.push_back({m, var});
  validate_family(f);  // already in ascending mask order
  return f;
}

InteractionFamily make_custom(std::vector<Subset> subsets, int volume, double cbar) {
  InteractionFamily f;
  f.subsets = std::move(subsets);
  f.volume = volume;
  f.preset = "custom";
  f.geometry = "custom";
  f.cbar = cbar;
  sort_and_check(f);
  return f;
}

Covariance covariance(const InteractionFamily& family, const SpinConfiguration& sigma,
                      const SpinConfiguration& tau) {
  if (sigma.volume != family.volume || tau.volume != family.volume)
    throw std::invalid_argument("covariance: volume mismatch");
  std::uint32_t diff = sigma.bits ^ tau.bits;
  std::vector<double> terms(family.subsets.size());
  for (std::size_t i = 0; i < family.subsets.size(); ++i) {
    const auto& s = family.subsets[i];
    double sign = (std::popcount(diff & s.mask) & 1u) ? -1.0 : 1.0;
    terms[i] = s.variance * sign;
  }
  Covariance c;
  c.raw = pairwise_sum(terms);
  c.normalized = c.raw / static_cast<double>(family.volume);
  return c;
}

StabilityReport stability_report(const InteractionFamily& family) {
  StabilityReport r;
  r.per_site_variance = family.per_site_variance();
  r.cbar = family.cbar;
  r.satisfied = r.per_site_variance <= r.cbar + 1e-12;
  return r;
}

}  // namespace gg
