#include "fmhd/log_symbol.hpp"

#include <algorithm>
#include <array>

#include "fmhd/errors.hpp"

namespace fmhd {
namespace {

constexpr std::array<std::pair<GFamily, const char*>, 9> kNames{{
    {GFamily::const1, "const1"},
    {GFamily::log14, "log14"},
    {GFamily::log14_loglog, "log14_loglog"},
    {GFamily::log14_logloglog, "log14_logloglog"},
    {GFamily::log12, "log12"},
    {GFamily::log12_loglog, "log12_loglog"},
    {GFamily::log12_logloglog, "log12_logloglog"},
    {GFamily::custom_table, "custom_table"},
    {GFamily::custom_function, "custom_function"},
}};

}  // namespace

std::string family_name(GFamily f) {
  for (const auto& [id, name] : kNames)
    if (id == f) return name;
  return "unknown";
}

GFamily parse_family(const std::string& name) {
  for (const auto& [id, n] : kNames)
    if (name == n) {
      if (id == GFamily::custom_table || id == GFamily::custom_function)
        throw ConfigError("g family '" + name + "' requires explicit data");
      return id;
    }
  throw ConfigError("unknown g family '" + name + "'");
}

LogSymbol LogSymbol::family(GFamily f) {
  if (f == GFamily::custom_table || f == GFamily::custom_function)
    throw ConfigError("custom g weights are built with LogSymbol::table or LogSymbol::custom");
  LogSymbol g;
  g.family_ = f;
  g.name_ = family_name(f);
  return g;
}

LogSymbol LogSymbol::table(std::vector<std::pair<double, double>> knots) {
  if (knots.empty()) throw ConfigError("custom g table is empty");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto [tau, g] = knots[i];
    if (!std::isfinite(tau) || !std::isfinite(g) || tau < 0.0)
      throw ConfigError("custom g table knots must be finite with tau >= 0");
    if (g < 1.0) throw DomainError("custom g table violates g >= 1 at tau = " + std::to_string(tau));
    if (i > 0 && tau <= knots[i - 1].first) throw ConfigError("custom g table tau values must increase strictly");
    if (i > 0 && g < knots[i - 1].second)
      throw DomainError("custom g table is not non-decreasing at tau = " + std::to_string(tau));
  }
  LogSymbol out;
  out.family_ = GFamily::custom_table;
  out.name_ = "custom_table";
  out.knots_ = std::move(knots);
  return out;
}

LogSymbol LogSymbol::custom(std::function<double(double)> g, std::string name) {
  LogSymbol out;
  out.family_ = GFamily::custom_function;
  out.name_ = std::move(name);
  out.fn_ = std::move(g);
  return out;
}

double LogSymbol::interpolate(double tau) const {
  if (tau <= knots_.front().first) return knots_.front().second;
  if (tau >= knots_.back().first) return knots_.back().second;
  const auto hi = std::upper_bound(knots_.begin(), knots_.end(), tau,
                                   [](double t, const auto& k) { return t < k.first; });
  const auto lo = hi - 1;
  const double w = (tau - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

std::optional<bool> LogSymbol::satisfies(GrowthForm form) const {
  // log14 families leave at worst 1/(tau ln tau ln ln tau ...) in either form;
  // log12 squared decays like 1/(tau (ln tau)^(3/2)) and converges.
  const bool squared = form == GrowthForm::squared;
  switch (family_) {
    case GFamily::const1:
    case GFamily::custom_table:  // bounded g
      return true;
    case GFamily::log14:
    case GFamily::log14_loglog:
    case GFamily::log14_logloglog:
      return true;
    case GFamily::log12:
    case GFamily::log12_loglog:
    case GFamily::log12_logloglog:
      return !squared;
    case GFamily::custom_function:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace fmhd
