#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmhd/errors.hpp"
#include "fmhd/growth.hpp"

using namespace fmhd;

TEST_CASE("constant weight has the closed form 2 (sqrt(ln X) - 1)") {
  const LogSymbol one;
  for (double x : {std::exp(4.0), 1e3, 1e8}) {
    const double expect = 2.0 * (std::sqrt(std::log(x)) - 1.0);
    CHECK(partial_integral(one, GrowthForm::squared, x) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(partial_integral(one, GrowthForm::plain, x) == doctest::Approx(expect).epsilon(1e-13));
  }
  CHECK(partial_integral(one, GrowthForm::plain, std::numbers::e) == 0.0);
}

TEST_CASE("between cut-offs is additive") {
  const auto g = LogSymbol::family(GFamily::log14);
  const double a = partial_integral(g, GrowthForm::squared, 1e4);
  const auto mid = partial_integral_between(g, GrowthForm::squared, 1e4, 1e9);
  CHECK(a + mid.value == doctest::Approx(partial_integral(g, GrowthForm::squared, 1e9)).epsilon(1e-12));
  CHECK(mid.error < 1e-10);
  CHECK_THROWS(partial_integral(g, GrowthForm::squared, 2.0));
}

TEST_CASE("ladder for a slowly divergent weight") {
  const auto rep = growth_condition_report(LogSymbol::family(GFamily::log14), GrowthForm::squared, 1e12);
  CHECK(rep.rows.size() == 12);
  CHECK(rep.rows.front().x == 10.0);
  CHECK(rep.strictly_increasing);
  CHECK(rep.trend == GrowthTrend::slowly_divergent);
  CHECK(rep.known_divergent.value());
  CHECK(rep.g_name == "log14");
  CHECK(trend_name(rep.trend) == "slowly_divergent");
}

TEST_CASE("a fast-growing weight looks convergent") {
  const auto g = LogSymbol::custom([](double t) { return std::exp(std::sqrt(std::log(t + std::numbers::e))); }, "fast");
  const auto rep = growth_condition_report(g, GrowthForm::plain, 1e20);
  CHECK(rep.trend == GrowthTrend::apparently_convergent);
  CHECK_FALSE(rep.known_divergent.has_value());
}

TEST_CASE("invalid inputs") {
  const auto bad = LogSymbol::custom([](double) { return 0.5; }, "half");
  CHECK_THROWS_AS(partial_integral(bad, GrowthForm::squared, 100.0), DomainError);
  CHECK_THROWS(growth_condition_report(LogSymbol{}, GrowthForm::plain, 5.0));
}
