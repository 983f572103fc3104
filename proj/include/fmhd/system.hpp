#pragma once

#include <optional>
#include <string>

#include "fmhd/log_symbol.hpp"
#include "fmhd/symbol.hpp"

namespace fmhd {

/// Which member of the regularized MHD family is simulated. Ids are part of the
/// checkpoint format.
enum class SystemVariant : unsigned {
  general = 0,     // fractional dissipation (alpha, beta), filter v = u + (-Delta)^gamma u
  thm1 = 1,        // alpha = 0: no velocity dissipation
  thm2 = 2,        // beta = 0, velocity dissipation (-Delta)^alpha L^2, filter with L^2, alpha + gamma = 2
  thm3 = 3,        // alpha = beta = 0, gamma = 2, filter with L^2
  appendix_a = 4,  // v = u - Delta u, no sum_j v_j grad u_j term
};

std::string variant_name(SystemVariant v);
SystemVariant parse_variant(const std::string& name);

struct SystemConfig {
  SystemVariant variant = SystemVariant::general;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::optional<LogSymbol> g;

  /// Whether the parameters satisfy the hypothesis of the theorem that covers
  /// the variant. Boundary cases of strict inequalities are not covered.
  bool covered_regime() const;
  /// Human-readable statement of the covering condition.
  std::string regime_condition() const;
};

/// Validates ranges and variant constraints, fills variant-implied exponents,
/// and throws ConfigError with the violated condition otherwise.
SystemConfig make_system(SystemVariant variant, double alpha, double beta, double gamma,
                         std::optional<LogSymbol> g = std::nullopt);

enum class Equation { velocity, magnetic };

/// Linear dissipation symbol of one equation (an exponent of zero means no
/// dissipation at all, including the mean mode).
SymbolSpec dissipation_symbol(const SystemConfig& config, Equation which);

/// Symbol of v = F(D) u for the variant.
SymbolSpec filter_symbol(const SystemConfig& config);

/// Whether the momentum equation carries the sum_j v_j grad u_j term.
inline bool has_transpose_term(const SystemConfig& config) {
  return config.variant != SystemVariant::appendix_a;
}

}  // namespace fmhd
