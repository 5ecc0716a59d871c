#include "gg/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace gg {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_real(const std::string& v, int line) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return x;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& v, int line) {
  long long x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    fail(line, "expected an integer, got '" + v + "'");
  return x;
}

bool parse_bool(const std::string& v, int line) {
  std::string s = lower(v);
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    parts.push_back(trim(std::string_view(s).substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

// "0,1 : 0.5" -> subset of sites {0,1} with variance 0.5
Subset parse_subset(const std::string& v, int line) {
  std::size_t colon = v.find(':');
  if (colon == std::string::npos) fail(line, "subset needs 'sites : variance'");
  Subset sub;
  for (const auto& tok : split(v.substr(0, colon), ',')) {
    if (tok.empty()) fail(line, "empty site index in subset");
    long long site = parse_int(tok, line);
    if (site < 0 || site >= kMaxVolume) fail(line, "site index out of range");
    sub.mask |= 1u << site;
  }
  if (sub.mask == 0) fail(line, "subset must name at least one site");
  sub.variance = parse_real(trim(std::string_view(v).substr(colon + 1)), line);
  return sub;
}

CheckKind parse_check(const std::string& name, int line) {
  std::string s = lower(name);
  if (s == "stability") return CheckKind::stability;
  if (s == "classical") return CheckKind::classical;
  if (s == "gg") return CheckKind::gg;
  if (s == "delta-dual" || s == "delta_dual") return CheckKind::delta_dual;
  if (s == "wick") return CheckKind::wick;
  if (s == "energy-identities" || s == "energy_identities") return CheckKind::energy_identities;
  if (s == "variance-bounds" || s == "variance_bounds") return CheckKind::variance_bounds;
  fail(line, "unknown check '" + name + "'");
}

}  // namespace

std::string check_name(CheckKind kind) {
  switch (kind) {
    case CheckKind::stability: return "stability";
    case CheckKind::classical: return "classical";
    case CheckKind::gg: return "gg";
    case CheckKind::delta_dual: return "delta-dual";
    case CheckKind::wick: return "wick";
    case CheckKind::energy_identities: return "energy-identities";
    case CheckKind::variance_bounds: return "variance-bounds";
  }
  return "?";
}

std::string FamilySpec::descriptor() const {
  std::ostringstream os;
  if (preset == "sk") {
    os << "sk(" << n << ")";
  } else if (preset == "p_spin") {
    os << "p_spin(" << n << ";p=" << p << ")";
  } else if (preset == "rem") {
    os << "rem(" << n << ")";
  } else if (preset == "ea") {
    os << "ea(d=" << d << ";L=" << side << (periodic ? ";periodic" : ";open") << ")";
  } else if (preset == "long_range") {
    os << "long_range(alpha=" << alpha << ";d=" << d << ";L=" << side << ")";
  } else {
    os << "custom(N=" << volume << ";K=" << subsets.size() << ")";
  }
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  cfg.observables.clear();
  bool sampled_scheme_seen = false;
  std::string method_str;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = lower(trim(std::string_view(line).substr(1, line.size() - 2)));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
    std::string key = lower(trim(std::string_view(line).substr(0, eq)));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (value.empty()) fail(line_no, "empty value for '" + key + "'");

    if (section == "family") {
      if (key == "preset") cfg.family.preset = lower(value);
      else if (key == "n") cfg.family.n = static_cast<int>(parse_int(value, line_no));
      else if (key == "p") cfg.family.p = static_cast<int>(parse_int(value, line_no));
      else if (key == "d") cfg.family.d = static_cast<int>(parse_int(value, line_no));
      else if (key == "side") cfg.family.side = static_cast<int>(parse_int(value, line_no));
      else if (key == "periodic") cfg.family.periodic = parse_bool(value, line_no);
      else if (key == "alpha") cfg.family.alpha = parse_real(value, line_no);
      else if (key == "sk_variance_convention") {
        std::string s = lower(value);
        if (s == "variance") cfg.family.sk_stddev_convention = false;
        else if (s == "stddev") cfg.family.sk_stddev_convention = true;
        else fail(line_no, "sk_variance_convention must be 'variance' or 'stddev'");
      }
      else if (key == "volume") cfg.family.volume = static_cast<int>(parse_int(value, line_no));
      else if (key == "cbar") cfg.family.cbar = parse_real(value, line_no);
      else if (key == "subset") cfg.family.subsets.push_back(parse_subset(value, line_no));
      else fail(line_no, "unknown family key '" + key + "'");
    } else if (section == "grid") {
      if (key == "beta1") cfg.beta1 = parse_real(value, line_no);
      else if (key == "beta2") cfg.beta2 = parse_real(value, line_no);
      else if (key == "points") cfg.grid_points = static_cast<int>(parse_int(value, line_no));
      else if (key == "measure") {
        std::string s = lower(value);
        if (s == "dbeta2") cfg.measure = Measure::d_beta2;
        else if (s == "dbeta") cfg.measure = Measure::d_beta;
        else fail(line_no, "measure must be 'dbeta2' or 'dbeta'");
      }
      else fail(line_no, "unknown grid key '" + key + "'");
    } else if (section == "observable") {
      if (key == "g") cfg.observables.push_back(value);
      else if (key == "replicas") cfg.replicas = static_cast<int>(parse_int(value, line_no));
      else fail(line_no, "unknown observable key '" + key + "'");
    } else if (section == "scheme") {
      if (key == "method") method_str = lower(value);
      else if (key == "samples") {
        cfg.scheme.n_samples = parse_int(value, line_no);
        sampled_scheme_seen = true;
      }
      else if (key == "seed") cfg.scheme.seed = static_cast<std::uint64_t>(parse_int(value, line_no));
      else if (key == "order") cfg.scheme.order = static_cast<int>(parse_int(value, line_no));
      else fail(line_no, "unknown scheme key '" + key + "'");
    } else if (section == "checks") {
      if (key == "run") {
        for (const auto& tok : split(value, ','))
          if (!tok.empty()) cfg.checks.push_back(parse_check(tok, line_no));
      } else {
        fail(line_no, "unknown checks key '" + key + "'");
      }
    } else if (section == "output") {
      if (key == "dir") cfg.out_dir = value;
      else if (key == "workers") cfg.workers = static_cast<int>(parse_int(value, line_no));
      else fail(line_no, "unknown output key '" + key + "'");
    } else if (section.empty()) {
      fail(line_no, "key before any [section]");
    } else {
      fail(line_no, "unknown section [" + section + "]");
    }
  }

  if (!method_str.empty()) {
    if (method_str == "mc" || method_str == "monte_carlo") cfg.scheme.method = Method::monte_carlo;
    else if (method_str == "quadrature") cfg.scheme.method = Method::quadrature;
    else throw ConfigError("config: unknown scheme method '" + method_str + "'");
  }
  (void)sampled_scheme_seen;
  if (cfg.observables.empty()) cfg.observables.push_back("q[1,2]");
  if (cfg.checks.empty())
    cfg.checks = {CheckKind::stability, CheckKind::classical, CheckKind::gg};
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate_config(const RunConfig& config) {
  const auto& fam = config.family;
  if (fam.preset != "sk" && fam.preset != "ea" && fam.preset != "long_range" &&
      fam.preset != "p_spin" && fam.preset != "rem" && fam.preset != "custom")
    throw ConfigError("unknown family preset '" + fam.preset + "'");
  if (!(config.beta1 >= 0.0)) throw ConfigError("beta1 must be >= 0");
  if (!(config.beta2 > config.beta1)) throw ConfigError("beta2 must exceed beta1");
  if (config.grid_points < 3) throw ConfigError("grid needs at least 3 points");
  if (config.replicas < 1 || config.replicas > 10)
    throw ConfigError("replicas must be in [1, 10]");
  if (config.scheme.method == Method::monte_carlo) {
    if (config.scheme.n_samples < 2) throw ConfigError("mc scheme needs samples >= 2");
  } else {
    if (config.scheme.order < 2 || config.scheme.order > 256)
      throw ConfigError("quadrature order must be in [2, 256]");
  }
  if (config.workers < 0) throw ConfigError("workers must be >= 0");
  for (const auto& spec : config.observables) {
    OverlapMonomial m;
    try {
      m = OverlapMonomial::parse(spec);
    } catch (const std::exception& e) {
      throw ConfigError(std::string("observable '") + spec + "': " + e.what());
    }
    if (m.max_replica() > config.replicas)
      throw ConfigError("observable '" + spec + "' uses replica index " +
                        std::to_string(m.max_replica()) + " but replicas = " +
                        std::to_string(config.replicas));
  }
}

InteractionFamily build_family(const FamilySpec& spec) {
  if (spec.preset == "sk") return make_sk(spec.n, spec.sk_stddev_convention);
  if (spec.preset == "ea") return make_ea(spec.d, spec.side, spec.periodic);
  if (spec.preset == "long_range")
    return make_long_range(spec.alpha, spec.d, spec.side, spec.periodic);
  if (spec.preset == "p_spin") return make_p_spin(spec.n, spec.p);
  if (spec.preset == "rem") return make_rem(spec.n);
  if (spec.preset == "custom") return make_custom(spec.subsets, spec.volume, spec.cbar);
  throw ConfigError("unknown family preset '" + spec.preset + "'");
}

}  // namespace gg
