#include "fmhd/symbol.hpp"

#include <sstream>

namespace fmhd {
namespace {

void require_exponent(double x, const char* what, double hi) {
  if (!std::isfinite(x) || x < 0.0) throw DomainError(std::string(what) + " exponent must be >= 0");
  if (x > hi) throw DomainError(std::string(what) + " exponent must be <= " + std::to_string(hi));
}

}  // namespace

SymbolSpec SymbolSpec::constant(double value) {
  if (!std::isfinite(value)) throw DomainError("constant symbol must be finite");
  SymbolSpec s;
  s.kind_ = Kind::constant;
  s.value_ = value;
  return s;
}

SymbolSpec SymbolSpec::frac_power(double sigma) {
  require_exponent(sigma, "fractional power", 1e3);
  SymbolSpec s;
  s.kind_ = Kind::frac_power;
  s.exponent_ = sigma;
  return s;
}

SymbolSpec SymbolSpec::log_weight(LogSymbol g) {
  SymbolSpec s;
  s.kind_ = Kind::log_weight;
  s.g_ = std::move(g);
  return s;
}

SymbolSpec SymbolSpec::filter(double gamma, std::optional<LogSymbol> g) {
  require_exponent(gamma, "filter", 2.0);
  SymbolSpec s;
  s.kind_ = Kind::filter;
  s.exponent_ = gamma;
  s.g_ = std::move(g);
  return s;
}

SymbolSpec SymbolSpec::inverse_filter(double gamma, std::optional<LogSymbol> g) {
  SymbolSpec s = filter(gamma, std::move(g));
  s.kind_ = Kind::inverse_filter;
  return s;
}

SymbolSpec SymbolSpec::composite(std::vector<SymbolSpec> factors) {
  SymbolSpec s;
  s.kind_ = Kind::composite;
  s.factors_ = std::move(factors);
  return s;
}

bool SymbolSpec::is_zero() const {
  switch (kind_) {
    case Kind::constant:
      return value_ == 0.0;
    case Kind::composite:
      for (const auto& f : factors_)
        if (f.is_zero()) return true;
      return false;
    default:
      return false;
  }
}

std::string SymbolSpec::describe() const {
  std::ostringstream os;
  const auto gname = [&] { return g_ ? g_->name() : std::string("const1"); };
  switch (kind_) {
    case Kind::constant:
      os << value_;
      break;
    case Kind::frac_power:
      os << "|k|^" << 2.0 * exponent_;
      break;
    case Kind::log_weight:
      os << "1/g[" << gname() << "]";
      break;
    case Kind::filter:
      os << "1+|k|^" << 2.0 * exponent_ << "/g[" << gname() << "]^2";
      break;
    case Kind::inverse_filter:
      os << "1/(1+|k|^" << 2.0 * exponent_ << "/g[" << gname() << "]^2)";
      break;
    case Kind::composite:
      for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " * " : "") << "(" << factors_[i].describe() << ")";
      if (factors_.empty()) os << "1";
      break;
  }
  return os.str();
}

}  // namespace fmhd
