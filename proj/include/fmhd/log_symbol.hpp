#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fmhd {

/// Built-in weights g(tau) >= 1, non-decreasing, used by the logarithmic operator L.
///
/// The ids are part of the checkpoint format and must stay stable.
enum class GFamily : unsigned {
  const1 = 0,           // g = 1
  log14 = 1,            // [ln(e+t)]^(1/4)
  log14_loglog = 2,     // [ln(e+t)]^(1/4) [ln(e+ln(e+t))]^(1/2)
  log14_logloglog = 3,  // [ln(e+t)]^(1/4) [ln(e+ln(e+t)) ln(e+ln(e+ln(e+t)))]^(1/2)
  log12 = 4,            // [ln(e+t)]^(1/2)
  log12_loglog = 5,     // [ln(e+t)]^(1/2) ln(e+ln(e+t))
  log12_logloglog = 6,  // [ln(e+t)]^(1/2) ln(e+ln(e+t)) ln(e+ln(e+ln(e+t)))
  custom_table = 7,     // piecewise-linear monotone table
  custom_function = 8,  // arbitrary callable; not serializable
};

/// Which divergence condition a weight is tested against:
/// squared:  int_e^inf dtau / (tau sqrt(ln tau) g(tau)^2) = inf
/// plain:    int_e^inf dtau / (tau sqrt(ln tau) g(tau))   = inf
enum class GrowthForm { squared, plain };

class LogSymbol {
 public:
  /// Defaults to g = 1.
  LogSymbol() = default;

  static LogSymbol family(GFamily f);
  /// Knots (tau_i, g_i) with tau strictly increasing, g non-decreasing and >= 1.
  /// Linear in between, constant outside the knot range.
  static LogSymbol table(std::vector<std::pair<double, double>> knots);
  static LogSymbol custom(std::function<double(double)> g, std::string name);

  GFamily id() const noexcept { return family_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<std::pair<double, double>>& knots() const noexcept { return knots_; }
  bool is_identity() const noexcept { return family_ == GFamily::const1; }

  /// g(tau) evaluated in the precision of `tau`.
  template <typename Scalar>
  Scalar eval(Scalar tau) const {
    using std::log;
    using std::pow;
    using std::sqrt;
    const Scalar e = std::numbers::e_v<Scalar>;
    switch (family_) {
      case GFamily::const1:
        return Scalar(1);
      case GFamily::log14:
        return sqrt(sqrt(log(e + tau)));
      case GFamily::log14_loglog: {
        const Scalar l1 = log(e + tau);
        return sqrt(sqrt(l1)) * sqrt(log(e + l1));
      }
      case GFamily::log14_logloglog: {
        const Scalar l1 = log(e + tau);
        const Scalar l2 = log(e + l1);
        return sqrt(sqrt(l1)) * sqrt(l2 * log(e + l2));
      }
      case GFamily::log12:
        return sqrt(log(e + tau));
      case GFamily::log12_loglog: {
        const Scalar l1 = log(e + tau);
        return sqrt(l1) * log(e + l1);
      }
      case GFamily::log12_logloglog: {
        const Scalar l1 = log(e + tau);
        const Scalar l2 = log(e + l1);
        return sqrt(l1) * l2 * log(e + l2);
      }
      case GFamily::custom_table:
        return static_cast<Scalar>(interpolate(static_cast<double>(tau)));
      case GFamily::custom_function:
        return static_cast<Scalar>(fn_(static_cast<double>(tau)));
    }
    return Scalar(1);
  }

  double operator()(double tau) const { return eval(tau); }

  /// Known answer for the divergence condition, when it is decidable from the
  /// closed form; empty for user callables.
  std::optional<bool> satisfies(GrowthForm form) const;

 private:
  double interpolate(double tau) const;

  GFamily family_ = GFamily::const1;
  std::string name_ = "const1";
  std::vector<std::pair<double, double>> knots_;
  std::function<double(double)> fn_;
};

/// Parses a family id ("const1", "log14", ...). Throws ConfigError for unknown
/// names and for "custom_table"/"custom_function", which need extra data.
GFamily parse_family(const std::string& name);
std::string family_name(GFamily f);

}  // namespace fmhd
