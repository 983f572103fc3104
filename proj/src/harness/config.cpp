#include "fmhd/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fmhd/errors.hpp"

namespace fmhd {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_real(const std::string& key, const std::string& value) {
  double x = 0.0;
  const auto* end = value.data() + value.size();
  const auto [p, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || p != end || !std::isfinite(x))
    throw ConfigError(key + ": expected a finite real number, got '" + value + "'");
  return x;
}

long to_integer(const std::string& key, const std::string& value) {
  long x = 0;
  const auto* end = value.data() + value.size();
  const auto [p, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || p != end) throw ConfigError(key + ": expected an integer, got '" + value + "'");
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t x = 0;
  const auto* end = value.data() + value.size();
  const auto [p, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || p != end) throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key + ": expected true or false, got '" + value + "'");
}

std::vector<double> to_reals(const std::string& key, const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split(value, ',')) {
    if (item.empty()) continue;
    out.push_back(to_real(key, item));
  }
  return out;
}

// "tau:g, tau:g, ..."
std::vector<std::pair<double, double>> to_knots(const std::string& key, const std::string& value) {
  std::vector<std::pair<double, double>> out;
  for (const auto& item : split(value, ',')) {
    if (item.empty()) continue;
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw ConfigError(key + ": knots are written tau:g, got '" + item + "'");
    out.emplace_back(to_real(key, parts[0]), to_real(key, parts[1]));
  }
  return out;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "system.variant",       "system.alpha",          "system.beta",        "system.gamma",
      "system.g",             "system.g_table",        "stepper.scheme",     "stepper.dt",
      "stepper.cfl_target",   "stepper.t_end",         "stepper.adaptive",   "stepper.adapt_every",
      "stepper.blowup_ceiling", "stepper.linear_only", "grid.n",             "initial.kind",
      "initial.amplitude",    "initial.seed",          "initial.k_min",      "initial.k_max",
      "initial.path",         "output.dir",            "output.diagnostics_every", "output.checkpoint",
      "diagnostics.sobolev_exponents"};
  return keys;
}

struct VariantDefaults {
  double alpha, beta, gamma;
  std::optional<GFamily> g;
};

VariantDefaults defaults_for(SystemVariant v) {
  switch (v) {
    case SystemVariant::general:
      return {0.0, 0.8, 0.5, std::nullopt};
    case SystemVariant::thm1:
      return {0.0, 0.8, 0.5, std::nullopt};
    case SystemVariant::thm2:
      return {1.0, 0.0, 1.0, GFamily::log14};
    case SystemVariant::thm3:
      return {0.0, 0.0, 2.0, GFamily::log12};
    case SystemVariant::appendix_a:
      return {0.0, 0.6, 1.0, std::nullopt};
  }
  return {0.0, 0.0, 0.0, std::nullopt};
}

}  // namespace

std::string initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::taylor_green_mhd:
      return "taylor_green_mhd";
    case InitialKind::random_band:
      return "random_band";
    case InitialKind::orszag_tang_like:
      return "orszag_tang_like";
    case InitialKind::from_checkpoint:
      return "from_checkpoint";
  }
  return "unknown";
}

InitialKind parse_initial_kind(const std::string& name) {
  for (auto k : {InitialKind::taylor_green_mhd, InitialKind::random_band, InitialKind::orszag_tang_like,
                 InitialKind::from_checkpoint})
    if (initial_kind_name(k) == name) return k;
  throw ConfigError("unknown initial.kind '" + name + "'");
}

std::vector<double> default_sobolev_exponents(const SystemConfig& system) {
  std::vector<double> s = {0.0, 1.0, 2.0};
  const double a = system.alpha, b = system.beta, g = system.gamma;
  switch (system.variant) {
    case SystemVariant::general:
    case SystemVariant::thm1:
      s.push_back(b + g - 1.0);
      s.push_back(2.0 * g + b);
      break;
    case SystemVariant::thm2:
      s.push_back(a);
      s.push_back(3.0);
      break;
    case SystemVariant::thm3:
      s.push_back(3.0);
      break;
    case SystemVariant::appendix_a:
      s.push_back(b);
      s.push_back(1.0 + b);
      break;
  }
  std::vector<double> out;
  for (double x : s) {
    if (x < -2.0 || x > 12.0) continue;
    if (std::none_of(out.begin(), out.end(), [&](double y) { return std::abs(x - y) < 1e-12; })) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

RunSpec parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (!known_keys().count(key)) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (!kv.emplace(key, value).second) throw ConfigError("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
  }
  const auto get = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  const auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
  };

  const auto variant_text = get("system.variant");
  if (!variant_text) throw ConfigError("system.variant is required");
  const SystemVariant variant = parse_variant(*variant_text);
  const auto d = defaults_for(variant);
  const double alpha = get("system.alpha") ? to_real("system.alpha", *get("system.alpha")) : d.alpha;
  const double beta = get("system.beta") ? to_real("system.beta", *get("system.beta")) : d.beta;
  const double gamma = get("system.gamma") ? to_real("system.gamma", *get("system.gamma")) : d.gamma;

  std::optional<LogSymbol> g;
  if (const auto name = get("system.g")) {
    if (*name == "custom_table") {
      const auto table = get("system.g_table");
      if (!table) throw ConfigError("system.g = custom_table needs system.g_table");
      try {
        g = LogSymbol::table(to_knots("system.g_table", *table));
      } catch (const DomainError& e) {
        throw ConfigError(std::string("system.g_table: ") + e.what());
      }
    } else {
      g = LogSymbol::family(parse_family(*name));
    }
  } else if (d.g) {
    g = LogSymbol::family(*d.g);
  }
  if (get("system.g_table") && (!g || g->id() != GFamily::custom_table))
    throw ConfigError("system.g_table is only meaningful with system.g = custom_table");

  RunSpec spec;
  const bool needs_g = variant == SystemVariant::thm2 || variant == SystemVariant::thm3;
  spec.system = make_system(variant, alpha, beta, gamma, needs_g ? g : std::nullopt);
  if (g && !needs_g && !g->is_identity())
    throw ConfigError("system.g is only used by THM2 and THM3; " + variant_name(variant) + " has no logarithmic operator");

  if (const auto v = get("stepper.scheme")) spec.stepper.scheme = parse_scheme(*v);
  if (const auto v = get("stepper.dt")) spec.stepper.dt = to_real("stepper.dt", *v);
  if (const auto v = get("stepper.cfl_target")) spec.stepper.cfl_target = to_real("stepper.cfl_target", *v);
  if (const auto v = get("stepper.t_end")) spec.stepper.t_end = to_real("stepper.t_end", *v);
  if (const auto v = get("stepper.adaptive")) spec.stepper.adaptive = to_bool("stepper.adaptive", *v);
  if (const auto v = get("stepper.adapt_every")) spec.stepper.adapt_every = static_cast<int>(to_integer("stepper.adapt_every", *v));
  if (const auto v = get("stepper.blowup_ceiling")) spec.stepper.blowup_ceiling = to_real("stepper.blowup_ceiling", *v);
  if (const auto v = get("stepper.linear_only")) spec.stepper.linear_only = to_bool("stepper.linear_only", *v);
  if (!(spec.stepper.dt > 0.0)) throw ConfigError("stepper.dt must be positive");
  if (!(spec.stepper.t_end >= 0.0)) throw ConfigError("stepper.t_end must be >= 0");
  if (!(spec.stepper.cfl_target > 0.0 && spec.stepper.cfl_target < 1.0))
    throw ConfigError("stepper.cfl_target must lie in (0, 1)");
  if (spec.stepper.adapt_every < 1) throw ConfigError("stepper.adapt_every must be >= 1");

  if (const auto v = get("grid.n")) spec.grid_n = static_cast<int>(to_integer("grid.n", *v));
  make_grid(spec.grid_n);  // validates

  if (const auto v = get("initial.kind")) spec.initial.kind = parse_initial_kind(*v);
  if (const auto v = get("initial.amplitude")) spec.initial.amplitude = to_real("initial.amplitude", *v);
  if (const auto v = get("initial.seed")) spec.initial.seed = to_unsigned("initial.seed", *v);
  if (const auto v = get("initial.k_min")) spec.initial.k_min = static_cast<int>(to_integer("initial.k_min", *v));
  if (const auto v = get("initial.k_max")) spec.initial.k_max = static_cast<int>(to_integer("initial.k_max", *v));
  if (const auto v = get("initial.path")) spec.initial.path = resolve(*v);
  if (spec.initial.kind == InitialKind::from_checkpoint && spec.initial.path.empty())
    throw ConfigError("initial.kind = from_checkpoint needs initial.path");

  if (const auto v = get("output.dir")) spec.output_dir = resolve(*v);
  if (const auto v = get("output.diagnostics_every")) spec.diagnostics_every = to_integer("output.diagnostics_every", *v);
  if (const auto v = get("output.checkpoint")) spec.write_checkpoint = to_bool("output.checkpoint", *v);
  if (spec.diagnostics_every < 1) throw ConfigError("output.diagnostics_every must be >= 1");

  if (const auto v = get("diagnostics.sobolev_exponents")) {
    spec.sobolev_exponents = to_reals("diagnostics.sobolev_exponents", *v);
    for (double s : spec.sobolev_exponents)
      if (s < -2.0 || s > 12.0) throw ConfigError("diagnostics.sobolev_exponents: " + format_real(s) + " is outside [-2, 12]");
  } else {
    spec.sobolev_exponents = default_sobolev_exponents(spec.system);
  }
  return spec;
}

RunSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

std::string dump_config(const RunSpec& s) {
  std::ostringstream os;
  os << "system.variant = " << variant_name(s.system.variant) << '\n'
     << "system.alpha = " << format_real(s.system.alpha) << '\n'
     << "system.beta = " << format_real(s.system.beta) << '\n'
     << "system.gamma = " << format_real(s.system.gamma) << '\n';
  if (s.system.g) {
    if (s.system.g->id() == GFamily::custom_table) {
      os << "system.g = custom_table\nsystem.g_table = ";
      const auto& knots = s.system.g->knots();
      for (std::size_t i = 0; i < knots.size(); ++i)
        os << (i ? ", " : "") << format_real(knots[i].first) << ':' << format_real(knots[i].second);
      os << '\n';
    } else {
      os << "system.g = " << family_name(s.system.g->id()) << '\n';
    }
  }
  os << "stepper.scheme = " << scheme_name(s.stepper.scheme) << '\n'
     << "stepper.dt = " << format_real(s.stepper.dt) << '\n'
     << "stepper.cfl_target = " << format_real(s.stepper.cfl_target) << '\n'
     << "stepper.t_end = " << format_real(s.stepper.t_end) << '\n'
     << "stepper.adaptive = " << (s.stepper.adaptive ? "true" : "false") << '\n'
     << "stepper.adapt_every = " << s.stepper.adapt_every << '\n'
     << "stepper.blowup_ceiling = " << format_real(s.stepper.blowup_ceiling) << '\n'
     << "stepper.linear_only = " << (s.stepper.linear_only ? "true" : "false") << '\n'
     << "grid.n = " << s.grid_n << '\n'
     << "initial.kind = " << initial_kind_name(s.initial.kind) << '\n'
     << "initial.amplitude = " << format_real(s.initial.amplitude) << '\n'
     << "initial.seed = " << s.initial.seed << '\n'
     << "initial.k_min = " << s.initial.k_min << '\n'
     << "initial.k_max = " << s.initial.k_max << '\n';
  if (!s.initial.path.empty()) os << "initial.path = " << std::filesystem::absolute(s.initial.path).string() << '\n';
  os << "output.dir = " << std::filesystem::absolute(s.output_dir).string() << '\n'
     << "output.diagnostics_every = " << s.diagnostics_every << '\n'
     << "output.checkpoint = " << (s.write_checkpoint ? "true" : "false") << '\n'
     << "diagnostics.sobolev_exponents = ";
  for (std::size_t i = 0; i < s.sobolev_exponents.size(); ++i)
    os << (i ? ", " : "") << format_real(s.sobolev_exponents[i]);
  os << '\n';
  return os.str();
}

void set_system_parameter(RunSpec& spec, const std::string& name, double value) {
  auto& c = spec.system;
  double alpha = c.alpha, beta = c.beta, gamma = c.gamma;
  if (name == "alpha")
    alpha = value;
  else if (name == "beta")
    beta = value;
  else if (name == "gamma")
    gamma = value;
  else
    throw ConfigError("unknown sweep axis '" + name + "' (expected alpha, beta or gamma)");
  c = make_system(c.variant, alpha, beta, gamma, c.g);
}

}  // namespace fmhd
