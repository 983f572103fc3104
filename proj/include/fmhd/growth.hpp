#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fmhd/log_symbol.hpp"

namespace fmhd {

/// I(X) = int_e^X dtau / (tau sqrt(ln tau) g(tau)^p), p = 2 (squared) or 1 (plain).
/// Evaluated after the substitution tau = exp(w^2), which turns the integrand
/// into 2 / g(exp(w^2))^p on [1, sqrt(ln X)].
double partial_integral(const LogSymbol& g, GrowthForm form, double x);

/// Partial integral between two cut-offs e <= x0 <= x1, with the quadrature
/// error estimate.
struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};
QuadratureResult partial_integral_between(const LogSymbol& g, GrowthForm form, double x0, double x1);

enum class GrowthTrend { slowly_divergent, apparently_convergent };
std::string trend_name(GrowthTrend t);

struct GrowthRow {
  double x = 0.0;
  double integral = 0.0;
  double error = 0.0;
};

struct GrowthReport {
  GrowthForm form = GrowthForm::squared;
  std::string g_name;
  std::vector<GrowthRow> rows;
  bool strictly_increasing = false;
  /// -d ln(integrand) / d ln w at the top of the ladder; <= 1 behaves like a
  /// divergent tail over the sampled range.
  double tail_exponent = 0.0;
  GrowthTrend trend = GrowthTrend::apparently_convergent;
  /// Closed-form answer when the family decides it.
  std::optional<bool> known_divergent;
};

/// Partial integrals at X = 10, 100, ..., X_max (and X_max itself). Throws
/// DomainError if g drops below 1 on the sampled range.
GrowthReport growth_condition_report(const LogSymbol& g, GrowthForm form, double x_max);

}  // namespace fmhd
