#include "gg/observables.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "gg/numeric.hpp"

namespace gg {

int OverlapMonomial::max_replica() const {
  int r = 0;
  for (auto [a, b] : factors) r = std::max({r, a, b});
  return r;
}

OverlapMonomial OverlapMonomial::times_q(int a, int b) const {
  OverlapMonomial m = *this;
  m.factors.emplace_back(std::min(a, b), std::max(a, b));
  return m;
}

std::string OverlapMonomial::str() const {
  if (factors.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "*";
    s += "q[" + std::to_string(factors[i].first) + "," + std::to_string(factors[i].second) + "]";
  }
  return s;
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("observable parse error at position " + std::to_string(pos) +
                                ": " + what);
  }
  int integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    int v = 0;
    for (std::size_t i = start; i < pos; ++i) v = v * 10 + (text[i] - '0');
    return v;
  }
};

}  // namespace

OverlapMonomial OverlapMonomial::parse(std::string_view text) {
  OverlapMonomial m;
  Cursor c{text};
  c.skip_ws();
  if (c.pos == text.size()) throw std::invalid_argument("empty observable");
  if (c.eat('1')) {
    c.skip_ws();
    if (c.pos != text.size()) c.fail("unexpected trailing text after constant");
    return m;
  }
  for (;;) {
    if (!c.eat('q')) c.fail("expected 'q'");
    if (!c.eat('[')) c.fail("expected '['");
    int a = c.integer();
    if (!c.eat(',')) c.fail("expected ','");
    int b = c.integer();
    if (!c.eat(']')) c.fail("expected ']'");
    if (a < 1 || b < 1) c.fail("replica indices are 1-based");
    int power = 1;
    if (c.eat('^')) power = c.integer();
    if (power < 1) c.fail("power must be >= 1");
    for (int i = 0; i < power; ++i) m.factors.emplace_back(std::min(a, b), std::max(a, b));
    c.skip_ws();
    if (c.pos == text.size()) break;
    if (!c.eat('*')) c.fail("expected '*'");
  }
  if (m.degree() > kMaxMonomialDegree) throw std::invalid_argument("monomial degree over cap");
  return m;
}

MonomialPlanSet::MonomialPlanSet(const InteractionFamily& family,
                                 std::vector<PlanRequest> requests) {
  const std::size_t k = family.subsets.size();
  const double qd = family.per_site_variance();
  std::unordered_map<std::uint32_t, std::uint16_t> mask_index;
  auto index_of = [&](std::uint32_t mask) -> std::uint16_t {
    auto it = mask_index.find(mask);
    if (it != mask_index.end()) return it->second;
    if (masks_.size() >= 65535) throw std::runtime_error("monomial plan too large");
    auto id = static_cast<std::uint16_t>(masks_.size());
    masks_.push_back(mask);
    mask_index.emplace(mask, id);
    return id;
  };

  for (const auto& req : requests) {
    // split diagonal (constant) factors from off-diagonal ones
    std::vector<std::pair<int, int>> off;
    int n_diag = 0;
    int max_rep = 0;
    for (auto [a, b] : req.monomial.factors) {
      max_rep = std::max({max_rep, a, b});
      if (a == b)
        ++n_diag;
      else
        off.emplace_back(a, b);
    }
    for (auto [rep, mask] : req.extras) {
      (void)mask;
      max_rep = std::max(max_rep, rep);
    }
    if (max_rep > 12) throw std::invalid_argument("replica index over cap");
    const int deg = static_cast<int>(off.size());
    if (deg > kMaxMonomialDegree) throw std::invalid_argument("monomial degree over cap");
    double tuples = std::pow(static_cast<double>(k), deg);
    if (tuples > static_cast<double>(kMaxMonomialTuples))
      throw std::runtime_error("monomial expansion over tuple budget");

    double pref = 1.0;
    for (int i = 0; i < n_diag; ++i) pref *= qd;
    for (int i = 0; i < deg; ++i) pref /= static_cast<double>(family.volume);
    prefactor_.push_back(pref);

    std::vector<Term> terms;
    std::vector<std::size_t> tuple(static_cast<std::size_t>(deg), 0);
    std::vector<std::uint32_t> rep_mask(static_cast<std::size_t>(max_rep) + 1, 0);
    for (;;) {
      std::fill(rep_mask.begin(), rep_mask.end(), 0u);
      double coeff = 1.0;
      for (int f = 0; f < deg; ++f) {
        const auto& sub = family.subsets[tuple[static_cast<std::size_t>(f)]];
        coeff *= sub.variance;
        rep_mask[static_cast<std::size_t>(off[static_cast<std::size_t>(f)].first)] ^= sub.mask;
        rep_mask[static_cast<std::size_t>(off[static_cast<std::size_t>(f)].second)] ^= sub.mask;
      }
      for (auto [rep, mask] : req.extras) rep_mask[static_cast<std::size_t>(rep)] ^= mask;
      Term t{};
      t.coeff = coeff;
      t.n = 0;
      for (std::uint32_t m : rep_mask) {
        if (m == 0) continue;
        if (t.n >= t.idx.size()) throw std::runtime_error("too many replica masks in one term");
        t.idx[t.n++] = index_of(m);
      }
      if (coeff != 0.0) terms.push_back(t);

      // odometer over subset tuples
      int pos = 0;
      for (; pos < deg; ++pos) {
        if (++tuple[static_cast<std::size_t>(pos)] < k) break;
        tuple[static_cast<std::size_t>(pos)] = 0;
      }
      if (pos == deg) break;
      if (deg == 0) break;
    }
    terms_.push_back(std::move(terms));
  }
}

void MonomialPlanSet::eval(const GibbsTable& table, double* out) const {
  std::vector<double> omega(masks_.size());
  for (std::size_t i = 0; i < masks_.size(); ++i) omega[i] = table.omega(masks_[i]);
  for (std::size_t r = 0; r < terms_.size(); ++r) {
    double acc = 0.0;
    for (const Term& t : terms_[r]) {
      double v = t.coeff;
      for (std::uint8_t i = 0; i < t.n; ++i) v *= omega[t.idx[i]];
      acc += v;
    }
    out[r] = prefactor_[r] * acc;
  }
}

double MonomialPlanSet::eval_one(const GibbsTable& table, int i) const {
  std::vector<double> out(terms_.size());
  eval(table, out.data());
  return out[static_cast<std::size_t>(i)];
}

double omega_monomial_exact(const InteractionFamily& family, const DisorderSample& sample,
                            double beta, const OverlapMonomial& m) {
  MonomialPlanSet plan(family, {PlanRequest{m, {}}});
  GibbsTable table(family, sample, beta);
  double out = 0.0;
  plan.eval(table, &out);
  return out;
}

double OverlapView::q(int a, int b) const {
  const auto& sa = replicas_[static_cast<std::size_t>(a - 1)];
  const auto& sb = replicas_[static_cast<std::size_t>(b - 1)];
  return covariance(family_, sa, sb).normalized;
}

double OverlapView::site_overlap(int a, int b) const {
  const auto& sa = replicas_[static_cast<std::size_t>(a - 1)];
  const auto& sb = replicas_[static_cast<std::size_t>(b - 1)];
  std::uint32_t agree = ~(sa.bits ^ sb.bits) & ((1u << family_.volume) - 1u);
  int same = std::popcount(agree);
  return (2.0 * same - family_.volume) / family_.volume;
}

MeanStderrPair omega_general_mc(const InteractionFamily& family, const DisorderSample& sample,
                                double beta, const ObservableFn& g, std::int64_t n_draws,
                                rng::Stream& stream) {
  if (n_draws < 2) throw std::invalid_argument("omega_general_mc needs n >= 2 draws");
  GibbsTable table(family, sample, beta);
  std::vector<SpinConfiguration> reps(static_cast<std::size_t>(g.replicas));
  std::vector<double> values(static_cast<std::size_t>(n_draws));
  for (std::int64_t i = 0; i < n_draws; ++i) {
    for (auto& r : reps) r = table.draw(stream);
    OverlapView view(family, reps);
    double v = g.fn(view);
    if (std::abs(v) > g.bound + 1e-12)
      throw std::logic_error("observable exceeded its declared bound");
    values[static_cast<std::size_t>(i)] = v;
  }
  auto ms = mean_stderr(values);
  return {ms.mean, ms.stderr_};
}

QuenchedEstimate quenched_moment(const InteractionFamily& family, double beta,
                                 const OverlapMonomial& m, const Scheme& scheme, int workers) {
  MonomialPlanSet plan(family, {PlanRequest{m, {}}});
  auto r = quenched_average_vec(family, scheme, 1, workers,
                                [&](const DisorderSample& s, double* out) {
                                  GibbsTable table(family, s, beta);
                                  plan.eval(table, out);
                                });
  return r.estimates[0];
}

}  // namespace gg
