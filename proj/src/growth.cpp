#include "fmhd/growth.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "fmhd/errors.hpp"

namespace fmhd {

namespace {

double power_of(GrowthForm form) { return form == GrowthForm::squared ? 2.0 : 1.0; }

double integrand(const LogSymbol& g, double p, double w) {
  const double tau = std::exp(w * w);
  if (!std::isfinite(tau)) return 0.0;
  const double gv = g(tau);
  if (!(gv >= 1.0)) throw DomainError("g(" + std::to_string(tau) + ") = " + std::to_string(gv) + " violates g >= 1");
  return 2.0 / std::pow(gv, p);
}

double w_of(double x) { return std::sqrt(std::log(x)); }

void require_cutoff(double x) {
  if (!(x >= std::numbers::e)) throw DomainError("cut-off X must be >= e");
}

}  // namespace

QuadratureResult partial_integral_between(const LogSymbol& g, GrowthForm form, double x0, double x1) {
  require_cutoff(x0);
  require_cutoff(x1);
  if (x1 < x0) throw DomainError("cut-offs must be ordered");
  const double p = power_of(form);
  QuadratureResult r;
  if (x1 == x0) return r;
  const auto f = [&](double w) { return integrand(g, p, w); };
  r.value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, w_of(x0), w_of(x1), 15, 1e-13, &r.error);
  return r;
}

double partial_integral(const LogSymbol& g, GrowthForm form, double x) {
  return partial_integral_between(g, form, std::numbers::e, x).value;
}

std::string trend_name(GrowthTrend t) {
  return t == GrowthTrend::slowly_divergent ? "slowly_divergent" : "apparently_convergent";
}

GrowthReport growth_condition_report(const LogSymbol& g, GrowthForm form, double x_max) {
  if (!(x_max > 10.0) || !std::isfinite(x_max)) throw DomainError("X_max must be a finite number > 10");
  GrowthReport rep;
  rep.form = form;
  rep.g_name = g.name();
  rep.known_divergent = g.satisfies(form);

  std::vector<double> ladder;
  for (double x = 10.0; x < x_max; x *= 10.0) ladder.push_back(x);
  ladder.push_back(x_max);

  double prev_x = std::numbers::e;
  double acc = 0.0, err = 0.0;
  for (double x : ladder) {
    const auto piece = partial_integral_between(g, form, prev_x, x);
    acc += piece.value;
    err += piece.error;
    rep.rows.push_back({x, acc, err});
    prev_x = x;
  }
  rep.strictly_increasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].integral > rep.rows[i - 1].integral)) rep.strictly_increasing = false;

  const double p = power_of(form);
  const double w1 = w_of(ladder.size() > 1 ? ladder[ladder.size() - 2] : std::numbers::e);
  const double w2 = w_of(x_max);
  const double f1 = integrand(g, p, w1);
  const double f2 = integrand(g, p, w2);
  rep.tail_exponent = (f1 > 0.0 && f2 > 0.0) ? -std::log(f2 / f1) / std::log(w2 / w1)
                                             : std::numeric_limits<double>::infinity();
  rep.trend = rep.tail_exponent <= 1.0 + 1e-9 ? GrowthTrend::slowly_divergent : GrowthTrend::apparently_convergent;
  return rep;
}

}  // namespace fmhd
