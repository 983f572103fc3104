#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "fmhd/errors.hpp"
#include "fmhd/field.hpp"
#include "fmhd/log_symbol.hpp"

namespace fmhd {

/// A radial Fourier multiplier m(|k|).
///
///   constant c            m = c
///   frac_power s          m = |k|^(2s), with m(0) = 0 for s > 0 and m = 1 for s = 0
///   log_weight g          m = 1 / g(|k|)
///   filter gamma [g]      m = 1 + |k|^(2 gamma) / g(|k|)^2
///   inverse_filter ...    m = 1 / filter
///   composite {...}       pointwise product of the members
class SymbolSpec {
 public:
  enum class Kind { constant, frac_power, log_weight, filter, inverse_filter, composite };

  static SymbolSpec constant(double value);
  static SymbolSpec zero() { return constant(0.0); }
  static SymbolSpec identity() { return constant(1.0); }
  static SymbolSpec frac_power(double sigma);
  static SymbolSpec log_weight(LogSymbol g);
  static SymbolSpec filter(double gamma, std::optional<LogSymbol> g = std::nullopt);
  static SymbolSpec inverse_filter(double gamma, std::optional<LogSymbol> g = std::nullopt);
  static SymbolSpec composite(std::vector<SymbolSpec> factors);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return exponent_; }
  double value() const noexcept { return value_; }
  const std::optional<LogSymbol>& weight() const noexcept { return g_; }
  const std::vector<SymbolSpec>& factors() const noexcept { return factors_; }

  /// True when the symbol vanishes on every mode.
  bool is_zero() const;
  std::string describe() const;

  /// m at the lattice radius sqrt(k2).
  template <typename Scalar>
  Scalar at(long k2) const {
    switch (kind_) {
      case Kind::constant:
        return static_cast<Scalar>(value_);
      case Kind::frac_power:
        return power<Scalar>(k2, exponent_);
      case Kind::log_weight:
        return Scalar(1) / checked_g<Scalar>(k2);
      case Kind::filter:
        return filter_value<Scalar>(k2);
      case Kind::inverse_filter:
        return Scalar(1) / filter_value<Scalar>(k2);
      case Kind::composite: {
        Scalar m = 1;
        for (const auto& f : factors_) m *= f.template at<Scalar>(k2);
        return m;
      }
    }
    return Scalar(0);
  }

 private:
  template <typename Scalar>
  static Scalar power(long k2, double sigma) {
    if (sigma == 0.0) return Scalar(1);
    if (k2 == 0) return Scalar(0);
    using std::pow;
    return pow(static_cast<Scalar>(k2), static_cast<Scalar>(sigma));
  }

  template <typename Scalar>
  Scalar checked_g(long k2) const {
    if (!g_ || g_->is_identity()) return Scalar(1);
    using std::sqrt;
    const Scalar g = g_->eval(sqrt(static_cast<Scalar>(k2)));
    if (!(g >= Scalar(1)) || !std::isfinite(static_cast<double>(g))) {
      throw DomainError("weight " + g_->name() + " violates g >= 1 at |k|^2 = " + std::to_string(k2));
    }
    return g;
  }

  template <typename Scalar>
  Scalar filter_value(long k2) const {
    const Scalar p = power<Scalar>(k2, exponent_);
    if (!g_ || g_->is_identity()) return Scalar(1) + p;
    const Scalar g = checked_g<Scalar>(k2);
    return Scalar(1) + p / (g * g);
  }

  Kind kind_ = Kind::constant;
  double exponent_ = 0.0;
  double value_ = 1.0;
  std::optional<LogSymbol> g_;
  std::vector<SymbolSpec> factors_;
};

/// Per-mode multiplier table, same layout as the coefficient arrays. Entries
/// are computed in long double and rounded once.
template <typename Scalar = double>
RealArray<Scalar> eval_symbol(const SymbolSpec& spec, const Grid& grid) {
  using Wide = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;
  const int n = grid.n();
  RealArray<Scalar> table(n, n);
  const auto& k2 = grid.k_squared();
  for (Eigen::Index i = 0; i < table.size(); ++i) table.data()[i] = static_cast<Scalar>(spec.at<Wide>(k2[i]));
  return table;
}

template <typename Scalar>
SpectralScalar<Scalar> apply_multiplier(SpectralScalar<Scalar> field, const RealArray<Scalar>& table) {
  if (table.rows() != field.n() || table.cols() != field.n()) throw DimensionError("multiplier table size mismatch");
  field.coeffs.array() = field.coeffs.array() * table.array();
  return field;
}

template <typename Scalar>
SpectralScalar<Scalar> apply_multiplier(SpectralScalar<Scalar> field, const SymbolSpec& spec) {
  auto table = eval_symbol<Scalar>(spec, *field.grid);
  return apply_multiplier(std::move(field), table);
}

template <typename Scalar, typename Symbol>
SpectralVector<Scalar> apply_multiplier(SpectralVector<Scalar> field, const Symbol& symbol) {
  field[0] = apply_multiplier(std::move(field[0]), symbol);
  field[1] = apply_multiplier(std::move(field[1]), symbol);
  return field;
}

/// Divides every mode by the table entry (used for filter inversion, where the
/// table is >= 1 everywhere).
template <typename Scalar>
SpectralScalar<Scalar> divide_by_symbol(SpectralScalar<Scalar> field, const RealArray<Scalar>& table) {
  if (table.rows() != field.n() || table.cols() != field.n()) throw DimensionError("multiplier table size mismatch");
  field.coeffs.array() = field.coeffs.array() / table.array();
  return field;
}

template <typename Scalar>
SpectralVector<Scalar> divide_by_symbol(SpectralVector<Scalar> field, const RealArray<Scalar>& table) {
  field[0] = divide_by_symbol(std::move(field[0]), table);
  field[1] = divide_by_symbol(std::move(field[1]), table);
  return field;
}

/// Recovers u from v = u + (-Delta)^gamma L^2 u.
template <typename Field>
Field invert_filter(Field v, double gamma, const std::optional<LogSymbol>& g = std::nullopt) {
  using Scalar = typename Field::scalar_type;
  const auto table = eval_symbol<Scalar>(SymbolSpec::filter(gamma, g), grid_of(v));
  return divide_by_symbol(std::move(v), table);
}

}  // namespace fmhd
