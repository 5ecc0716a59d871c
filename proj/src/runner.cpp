#include "gg/runner.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "gg/identities.hpp"
#include "gg/numeric.hpp"
#include "gg/version.hpp"

namespace gg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sanitize(std::string_view s) {
  std::string out;
  for (char c : s)
    if (std::isalnum(static_cast<unsigned char>(c))) out += c;
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<ResultRecord>& records) {
  std::ofstream out(path);
  out << "schema_version,check,item,family,beta,value,stderr,bound,pass,seed,version,wall_s\n";
  for (const auto& r : records) {
    out << kSchemaVersion << ',' << r.check << ',' << r.item << ',' << r.family << ',' << r.beta
        << ',' << format_real(r.value) << ',' << format_real(r.stderr_) << ','
        << (r.has_bound ? format_real(r.bound) : std::string("na")) << ','
        << (r.pass ? "true" : "false") << ',' << r.seed << ',' << kCodeVersion << ','
        << format_real(r.wall_s) << '\n';
  }
}

void write_curve(const std::filesystem::path& path, const ResidualCurve& curve) {
  std::ofstream out(path);
  out << "beta,value,stderr\n";
  for (std::size_t i = 0; i < curve.betas.size(); ++i)
    out << format_real(curve.betas[i]) << ',' << format_real(curve.values[i]) << ','
        << format_real(curve.stderrs[i]) << '\n';
}

struct CheckContext {
  const RunConfig& config;
  const InteractionFamily& family;
  std::string family_desc;
  int workers;
  std::vector<ResultRecord>* records;
  std::filesystem::path out_dir;

  ResultRecord& add(std::string check, std::string item, std::string beta, double value,
                    double stderr_) {
    ResultRecord r;
    r.check = std::move(check);
    r.item = std::move(item);
    r.family = family_desc;
    r.beta = std::move(beta);
    r.value = value;
    r.stderr_ = stderr_;
    r.seed = config.scheme.method == Method::monte_carlo ? config.scheme.seed : 0;
    records->push_back(std::move(r));
    return records->back();
  }
};

std::string beta_range_label(const RunConfig& c) {
  return format_real(c.beta1) + ":" + format_real(c.beta2);
}

void emit_curve_rows(CheckContext& ctx, const std::string& check, const std::string& item,
                     const ResidualCurve& curve, Clock::time_point t0) {
  for (std::size_t i = 0; i < curve.betas.size(); ++i) {
    auto& r = ctx.add(check, item, format_real(curve.betas[i]), curve.values[i],
                      curve.stderrs[i]);
    r.wall_s = seconds_since(t0);
  }
  auto& r = ctx.add(check, item + "_integral", beta_range_label(ctx.config), curve.integral,
                    curve.integral_stderr);
  r.wall_s = seconds_since(t0);
  write_curve(ctx.out_dir / (check + "_" + sanitize(item) + ".curve.csv"), curve);
}

void check_stability(CheckContext& ctx) {
  auto t0 = Clock::now();
  auto rep = stability_report(ctx.family);
  auto& r = ctx.add("stability", "per_site_variance", "na", rep.per_site_variance, 0.0);
  r.bound = rep.cbar;
  r.has_bound = true;
  r.pass = rep.satisfied;
  r.hard = true;
  r.wall_s = seconds_since(t0);
}

void check_classical(CheckContext& ctx) {
  auto t0 = Clock::now();
  const auto& c = ctx.config;
  auto [c1, c2] = classical_identities(ctx.family, c.beta1, c.beta2, c.grid_points, c.measure,
                                       c.scheme, ctx.workers);
  emit_curve_rows(ctx, "classical", "r1", c1, t0);
  emit_curve_rows(ctx, "classical", "r2", c2, t0);
}

void check_gg(CheckContext& ctx) {
  const auto& c = ctx.config;
  for (const auto& spec : c.observables) {
    auto t0 = Clock::now();
    auto g = OverlapMonomial::parse(spec);
    auto [c1, c2] = gg_residuals(ctx.family, c.replicas, g, c.beta1, c.beta2, c.grid_points,
                                 c.measure, c.scheme, ctx.workers);
    std::string tag = sanitize(spec);
    emit_curve_rows(ctx, "gg", "d1_" + tag, c1, t0);
    emit_curve_rows(ctx, "gg", "d2_" + tag, c2, t0);
  }
}

void check_delta_dual(CheckContext& ctx) {
  const auto& c = ctx.config;
  const double beta = 0.5 * (c.beta1 + c.beta2);
  for (const auto& spec : c.observables) {
    auto g = OverlapMonomial::parse(spec);
    for (int which = 1; which <= 2; ++which) {
      auto t0 = Clock::now();
      DeltaReport rep = which == 1
                            ? delta1_dual(ctx.family, beta, c.replicas, g, c.scheme, ctx.workers)
                            : delta2_dual(ctx.family, beta, c.replicas, g, c.scheme, ctx.workers);
      double tol = 1e-6;
      if (c.scheme.method == Method::monte_carlo) {
        double se = std::hypot(rep.closed.stderr_, rep.definitional.stderr_);
        tol = std::max(tol, 4.0 * se);
      }
      auto& r = ctx.add("delta-dual", "d" + std::to_string(which) + "_" + sanitize(spec),
                        format_real(beta), rep.discrepancy, 0.0);
      r.bound = tol;
      r.has_bound = true;
      r.pass = rep.discrepancy <= tol;
      r.hard = true;
      r.wall_s = seconds_since(t0);
    }
    auto t0 = Clock::now();
    auto sum = sum_rule_check(ctx.family, beta, c.replicas, g, c.scheme, ctx.workers);
    double tol = c.scheme.method == Method::monte_carlo ? 1e-3 : 1e-6;
    auto& r = ctx.add("delta-dual", "sum_rule_" + sanitize(spec), format_real(beta), sum.residual,
                      0.0);
    r.bound = tol;
    r.has_bound = true;
    r.pass = sum.residual <= tol;
    r.hard = c.scheme.method == Method::quadrature;
    r.wall_s = seconds_since(t0);
  }
}

void check_wick(CheckContext& ctx) {
  const double beta = 0.5 * (ctx.config.beta1 + ctx.config.beta2);
  const int order = 40;
  for (const auto& psi : builtin_wick_suite(ctx.family, beta)) {
    auto t0 = Clock::now();
    double res = wick_residual(ctx.family, psi, order);
    auto& r = ctx.add("wick", psi.name, format_real(beta), res, 0.0);
    r.bound = 1e-6;
    r.has_bound = true;
    r.pass = res <= 1e-6;
    r.hard = true;
    r.wall_s = seconds_since(t0);
  }
}

void check_energy_identities(CheckContext& ctx) {
  const double beta = 0.5 * (ctx.config.beta1 + ctx.config.beta2);
  const int order = 40;
  auto t0 = Clock::now();
  auto first = internal_energy_identity_check(ctx.family, beta, order);
  auto& r1 = ctx.add("energy-identities", "first_moment", format_real(beta), first.residual, 0.0);
  r1.bound = 1e-8;
  r1.has_bound = true;
  r1.pass = first.residual <= 1e-8;
  r1.hard = true;
  r1.wall_s = seconds_since(t0);

  t0 = Clock::now();
  auto second = internal_energy_second_moment_check(ctx.family, beta, order);
  auto& r2 =
      ctx.add("energy-identities", "second_moment", format_real(beta), second.residual, 0.0);
  r2.bound = 1e-7;
  r2.has_bound = true;
  r2.pass = second.residual <= 1e-7;
  r2.hard = true;
  r2.wall_s = seconds_since(t0);

  // The six-term form alone, without the diagonal completion; informational.
  auto& r3 = ctx.add("energy-identities", "second_moment_six_term", format_real(beta),
                     second.residual_as_printed, 0.0);
  r3.wall_s = seconds_since(t0);
}

void check_variance_bounds(CheckContext& ctx) {
  const auto& c = ctx.config;
  std::int64_t n = c.scheme.method == Method::monte_carlo ? c.scheme.n_samples : 500;
  n = std::max<std::int64_t>(n, 100);
  std::uint64_t seed = c.scheme.method == Method::monte_carlo ? c.scheme.seed : 1;
  for (double beta : {c.beta1, c.beta2}) {
    auto t0 = Clock::now();
    auto fa = free_energy_variance(ctx.family, beta, n, seed, ctx.workers);
    auto& r1 = ctx.add("variance-bounds", "free_energy", format_real(beta), fa.variance,
                       fa.stderr_);
    r1.bound = fa.bound;
    r1.has_bound = true;
    r1.pass = fa.satisfied;
    r1.hard = true;
    r1.seed = seed;
    r1.wall_s = seconds_since(t0);

    t0 = Clock::now();
    auto iu = internal_energy_variance(ctx.family, beta, n, seed, ctx.workers);
    auto& r2 = ctx.add("variance-bounds", "internal_energy", format_real(beta), iu.variance,
                       iu.stderr_);
    r2.bound = iu.bound;
    r2.has_bound = true;
    r2.pass = iu.satisfied;
    r2.hard = true;
    r2.seed = seed;
    r2.wall_s = seconds_since(t0);
  }
}

void write_summary(const std::filesystem::path& path, const RunConfig& config,
                   const std::string& family_desc, const RunOutcome& outcome) {
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& r : outcome.records) {
    auto& entry = checks[r.check];
    if (!entry.contains("rows")) {
      entry["rows"] = 0;
      entry["pass"] = true;
    }
    entry["rows"] = entry["rows"].get<int>() + 1;
    if (r.hard && !r.pass) entry["pass"] = false;
    if (r.item.ends_with("_integral")) entry[r.item] = r.value;
  }
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kCodeVersion;
  j["family"] = family_desc;
  j["beta_range"] = {config.beta1, config.beta2};
  j["measure"] = config.measure == Measure::d_beta2 ? "dbeta2" : "dbeta";
  j["checks"] = checks;
  j["exit_code"] = outcome.exit_code;
  std::ofstream out(path);
  out << j.dump(2) << '\n';
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

RunOutcome run_config(const RunConfig& config) {
  RunOutcome outcome;
  validate_config(config);

  InteractionFamily family;
  try {
    family = build_family(config.family);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("family: ") + e.what());
  }

  const bool needs_quadrature =
      config.scheme.method == Method::quadrature ||
      std::any_of(config.checks.begin(), config.checks.end(), [](CheckKind k) {
        return k == CheckKind::wick || k == CheckKind::energy_identities;
      });
  if (needs_quadrature && !quadrature_feasible(family, std::max(config.scheme.order, 40))) {
    outcome.exit_code = 3;
    std::cerr << "quadrature infeasible for this family (too many couplings)\n";
    return outcome;
  }

  std::filesystem::path out_dir(config.out_dir);
  std::filesystem::create_directories(out_dir);

  CheckContext ctx{config, family, config.family.descriptor(),
                   config.workers, &outcome.records, out_dir};
  for (CheckKind kind : config.checks) {
    switch (kind) {
      case CheckKind::stability: check_stability(ctx); break;
      case CheckKind::classical: check_classical(ctx); break;
      case CheckKind::gg: check_gg(ctx); break;
      case CheckKind::delta_dual: check_delta_dual(ctx); break;
      case CheckKind::wick: check_wick(ctx); break;
      case CheckKind::energy_identities: check_energy_identities(ctx); break;
      case CheckKind::variance_bounds: check_variance_bounds(ctx); break;
    }
  }

  for (const auto& r : outcome.records)
    if (r.hard && !r.pass) outcome.exit_code = 1;

  write_csv(out_dir / "results.csv", outcome.records);
  write_summary(out_dir / "summary.json", config, ctx.family_desc, outcome);
  return outcome;
}

namespace {

RunConfig load_with_overrides(const std::string& config_path, const std::string& out_override,
                              int workers_override) {
  RunConfig config = load_config(config_path);
  if (!out_override.empty()) config.out_dir = out_override;
  if (workers_override > 0) config.workers = workers_override;
  return config;
}

}  // namespace

int run(const std::string& config_path, const std::string& out_override, int workers_override) {
  try {
    RunConfig config = load_with_overrides(config_path, out_override, workers_override);
    auto outcome = run_config(config);
    if (outcome.exit_code == 1) std::cerr << "one or more hard checks failed\n";
    return outcome.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

int sweep(const std::string& config_path, const std::vector<int>& sizes,
          const std::string& out_override, int workers_override) {
  try {
    RunConfig base = load_with_overrides(config_path, out_override, workers_override);
    validate_config(base);
    if (sizes.empty()) throw ConfigError("sweep needs at least one size");

    CheckKind kind = CheckKind::classical;
    for (CheckKind k : base.checks)
      if (k == CheckKind::classical || k == CheckKind::gg) {
        kind = k;
        break;
      }

    struct Row {
      int volume;
      double value;
      double stderr_;
    };
    std::vector<Row> rows;
    for (int size : sizes) {
      RunConfig config = base;
      if (config.family.preset == "ea" || config.family.preset == "long_range")
        config.family.side = size;
      else if (config.family.preset == "custom")
        throw ConfigError("sweep does not support custom families");
      else
        config.family.n = size;
      InteractionFamily family;
      try {
        family = build_family(config.family);
      } catch (const std::invalid_argument& e) {
        std::cerr << "size " << size << ": " << e.what() << '\n';
        return 3;
      }
      ResidualCurve curve;
      if (kind == CheckKind::classical) {
        curve = classical_identities(family, config.beta1, config.beta2, config.grid_points,
                                     config.measure, config.scheme, config.workers)
                    .first;
      } else {
        auto g = OverlapMonomial::parse(config.observables.front());
        curve = gg_residuals(family, config.replicas, g, config.beta1, config.beta2,
                             config.grid_points, config.measure, config.scheme, config.workers)
                    .first;
      }
      rows.push_back({family.volume, std::abs(curve.integral), curve.integral_stderr});
    }

    std::filesystem::path out_dir(base.out_dir);
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir / "scaling.csv");
    out << "schema_version,check,item,n,value,stderr\n";
    for (const auto& r : rows)
      out << kSchemaVersion << ',' << check_name(kind) << ",abs_integral," << r.volume << ','
          << format_real(r.value) << ',' << format_real(r.stderr_) << '\n';

    if (rows.size() >= 2) {
      std::vector<double> lx, ly;
      for (const auto& r : rows)
        if (r.value > 0.0) {
          lx.push_back(std::log(static_cast<double>(r.volume)));
          ly.push_back(std::log(r.value));
        }
      auto fit = fit_line(lx, ly);
      if (fit.valid) {
        out << kSchemaVersion << ',' << check_name(kind) << ",loglog_slope,na,"
            << format_real(fit.slope) << ',' << format_real(fit.slope_stderr) << '\n';
      } else {
        out << kSchemaVersion << ',' << check_name(kind) << ",loglog_slope,na,na,na\n";
      }
    } else {
      out << kSchemaVersion << ',' << check_name(kind) << ",loglog_slope,na,na,na\n";
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace gg
