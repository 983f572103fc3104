#include "fmhd/system.hpp"

#include <cmath>
#include <sstream>

#include "fmhd/errors.hpp"

namespace fmhd {
namespace {

constexpr double kEqTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kEqTol; }

void require_unit_range(double x, const char* name) {
  if (!std::isfinite(x) || x < 0.0 || x > 2.0) {
    throw ConfigError(std::string(name) + " must lie in [0, 2], got " + std::to_string(x));
  }
}

void require_value(double x, double expected, const char* name, const char* why) {
  if (!near(x, expected)) {
    std::ostringstream os;
    os << name << " = " << x << " is incompatible with " << why;
    throw ConfigError(os.str());
  }
}

}  // namespace

std::string variant_name(SystemVariant v) {
  switch (v) {
    case SystemVariant::general:
      return "GENERAL";
    case SystemVariant::thm1:
      return "THM1";
    case SystemVariant::thm2:
      return "THM2";
    case SystemVariant::thm3:
      return "THM3";
    case SystemVariant::appendix_a:
      return "APPENDIX_A";
  }
  return "UNKNOWN";
}

SystemVariant parse_variant(const std::string& name) {
  for (auto v : {SystemVariant::general, SystemVariant::thm1, SystemVariant::thm2, SystemVariant::thm3,
                 SystemVariant::appendix_a})
    if (variant_name(v) == name) return v;
  throw ConfigError("unknown system variant '" + name + "'");
}

SystemConfig make_system(SystemVariant variant, double alpha, double beta, double gamma,
                         std::optional<LogSymbol> g) {
  require_unit_range(alpha, "alpha");
  require_unit_range(beta, "beta");
  require_unit_range(gamma, "gamma");
  const bool needs_g = variant == SystemVariant::thm2 || variant == SystemVariant::thm3;
  if (needs_g && !g) throw ConfigError(variant_name(variant) + " requires a logarithmic weight g");
  if (!needs_g && g && !g->is_identity())
    throw ConfigError(variant_name(variant) + " does not use a logarithmic weight g");
  if (!needs_g) g.reset();

  switch (variant) {
    case SystemVariant::general:
      break;
    case SystemVariant::thm1:
      require_value(alpha, 0.0, "alpha", "THM1 (alpha = 0, no velocity dissipation)");
      break;
    case SystemVariant::thm2:
      require_value(beta, 0.0, "beta", "THM2 (beta = 0, no magnetic diffusion)");
      if (!(alpha > 0.0)) throw ConfigError("THM2 requires alpha in (0, 2]");
      if (!near(alpha + gamma, 2.0)) {
        std::ostringstream os;
        os << "THM2 requires alpha + gamma = 2 with alpha in (0, 2]; got alpha + gamma = " << alpha + gamma;
        throw ConfigError(os.str());
      }
      break;
    case SystemVariant::thm3:
      require_value(alpha, 0.0, "alpha", "THM3 (alpha = beta = 0, gamma = 2)");
      require_value(beta, 0.0, "beta", "THM3 (alpha = beta = 0, gamma = 2)");
      require_value(gamma, 2.0, "gamma", "THM3 (alpha = beta = 0, gamma = 2)");
      break;
    case SystemVariant::appendix_a:
      require_value(alpha, 0.0, "alpha", "APPENDIX_A (v = u - Delta u, no velocity dissipation)");
      require_value(gamma, 1.0, "gamma", "APPENDIX_A (v = u - Delta u)");
      break;
  }
  return SystemConfig{variant, alpha, beta, gamma, std::move(g)};
}

bool SystemConfig::covered_regime() const {
  switch (variant) {
    case SystemVariant::general:
      // Only the alpha = 0 slice is covered (it coincides with THM1).
      return alpha == 0.0 && beta > 1.0 - gamma / 2.0;
    case SystemVariant::thm1:
      return beta > 1.0 - gamma / 2.0;
    case SystemVariant::thm2:
      return alpha > 0.0 && near(alpha + gamma, 2.0) && g && g->satisfies(GrowthForm::squared).value_or(false);
    case SystemVariant::thm3:
      return g && g->satisfies(GrowthForm::plain).value_or(false);
    case SystemVariant::appendix_a:
      return beta > 0.5;
  }
  return false;
}

std::string SystemConfig::regime_condition() const {
  switch (variant) {
    case SystemVariant::general:
    case SystemVariant::thm1:
      return "alpha = 0 and beta > 1 - gamma/2 with gamma in [0, 2]";
    case SystemVariant::thm2:
      return "alpha + gamma = 2 with alpha in (0, 2] and int_e^inf dtau/(tau sqrt(ln tau) g^2(tau)) = inf";
    case SystemVariant::thm3:
      return "alpha = beta = 0, gamma = 2 and int_e^inf dtau/(tau sqrt(ln tau) g(tau)) = inf";
    case SystemVariant::appendix_a:
      return "beta > 1/2";
  }
  return {};
}

SymbolSpec dissipation_symbol(const SystemConfig& config, Equation which) {
  const double exponent = which == Equation::velocity ? config.alpha : config.beta;
  if (exponent == 0.0) return SymbolSpec::zero();
  switch (config.variant) {
    case SystemVariant::general:
      return SymbolSpec::frac_power(exponent);
    case SystemVariant::thm1:
    case SystemVariant::appendix_a:
      return which == Equation::velocity ? SymbolSpec::zero() : SymbolSpec::frac_power(exponent);
    case SystemVariant::thm2:
      if (which == Equation::magnetic) return SymbolSpec::zero();
      return SymbolSpec::composite(
          {SymbolSpec::frac_power(exponent), SymbolSpec::log_weight(*config.g), SymbolSpec::log_weight(*config.g)});
    case SystemVariant::thm3:
      return SymbolSpec::zero();
  }
  return SymbolSpec::zero();
}

SymbolSpec filter_symbol(const SystemConfig& config) {
  if (config.variant == SystemVariant::thm2 || config.variant == SystemVariant::thm3)
    return SymbolSpec::filter(config.gamma, config.g);
  return SymbolSpec::filter(config.gamma);
}

}  // namespace fmhd
