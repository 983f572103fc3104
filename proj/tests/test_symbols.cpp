#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmhd/errors.hpp"
#include "fmhd/symbol.hpp"

using namespace fmhd;

namespace {

long double oracle_l(long double tau) { return std::log(std::numbers::e_v<long double> + tau); }

}  // namespace

TEST_CASE("g families match their closed forms") {
  for (double tau : {0.0, 1.0, 7.5, 1e3, 1e9}) {
    const long double l1 = oracle_l(tau);
    const long double l2 = oracle_l(l1);
    const long double l3 = oracle_l(l2);
    CHECK(LogSymbol::family(GFamily::const1)(tau) == 1.0);
    CHECK(LogSymbol::family(GFamily::log14)(tau) == doctest::Approx(double(std::pow(l1, 0.25L))));
    CHECK(LogSymbol::family(GFamily::log12)(tau) == doctest::Approx(double(std::sqrt(l1))));
    CHECK(LogSymbol::family(GFamily::log14_loglog)(tau) == doctest::Approx(double(std::pow(l1, 0.25L) * std::sqrt(l2))));
    CHECK(LogSymbol::family(GFamily::log12_loglog)(tau) == doctest::Approx(double(std::sqrt(l1) * l2)));
    CHECK(LogSymbol::family(GFamily::log14_logloglog)(tau) ==
          doctest::Approx(double(std::pow(l1, 0.25L) * std::sqrt(l2 * l3))));
    CHECK(LogSymbol::family(GFamily::log12_logloglog)(tau) == doctest::Approx(double(std::sqrt(l1) * l2 * l3)));
  }
}

TEST_CASE("every built-in weight is >= 1 and non-decreasing") {
  for (auto f : {GFamily::const1, GFamily::log14, GFamily::log14_loglog, GFamily::log14_logloglog, GFamily::log12,
                 GFamily::log12_loglog, GFamily::log12_logloglog}) {
    const auto g = LogSymbol::family(f);
    double prev = 1.0;
    for (double tau = 0.0; tau < 1e6; tau = tau * 3 + 0.5) {
      const double v = g(tau);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("family names roundtrip") {
  for (auto f : {GFamily::const1, GFamily::log14, GFamily::log12_logloglog})
    CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_family("log13"), ConfigError);
  CHECK_THROWS_AS(parse_family("custom_table"), ConfigError);
  CHECK_THROWS_AS(LogSymbol::family(GFamily::custom_function), ConfigError);
}

TEST_CASE("tabulated weights interpolate linearly and clamp") {
  const auto g = LogSymbol::table({{1.0, 1.0}, {3.0, 2.0}, {5.0, 2.5}});
  CHECK(g(0.0) == 1.0);
  CHECK(g(2.0) == doctest::Approx(1.5));
  CHECK(g(4.0) == doctest::Approx(2.25));
  CHECK(g(100.0) == 2.5);
  CHECK(g.id() == GFamily::custom_table);
  CHECK(g.satisfies(GrowthForm::squared).value());
}

TEST_CASE("tabulated weights are validated") {
  CHECK_THROWS_AS(LogSymbol::table({}), ConfigError);
  CHECK_THROWS_AS(LogSymbol::table({{1.0, 0.5}}), DomainError);
  CHECK_THROWS_AS(LogSymbol::table({{1.0, 2.0}, {2.0, 1.5}}), DomainError);
  CHECK_THROWS_AS(LogSymbol::table({{1.0, 1.0}, {1.0, 2.0}}), ConfigError);
  CHECK_THROWS_AS(LogSymbol::table({{-1.0, 1.0}}), ConfigError);
}

TEST_CASE("known divergence answers") {
  CHECK(LogSymbol::family(GFamily::log14).satisfies(GrowthForm::squared).value());
  CHECK_FALSE(LogSymbol::family(GFamily::log12).satisfies(GrowthForm::squared).value());
  CHECK(LogSymbol::family(GFamily::log12).satisfies(GrowthForm::plain).value());
  CHECK_FALSE(LogSymbol::custom([](double) { return 1.0; }, "one").satisfies(GrowthForm::plain).has_value());
}

TEST_CASE("symbol conventions on the lattice") {
  SUBCASE("fractional power acts on |k|^2") {
    const auto s = SymbolSpec::frac_power(0.5);
    CHECK(s.at<double>(25) == doctest::Approx(5.0));
    CHECK(s.at<double>(0) == 0.0);
    CHECK(SymbolSpec::frac_power(0.0).at<double>(0) == 1.0);
  }
  SUBCASE("filter") {
    CHECK(SymbolSpec::filter(1.0).at<double>(4) == doctest::Approx(5.0));
    CHECK(SymbolSpec::filter(1.0).at<double>(0) == 1.0);
    const auto g = LogSymbol::family(GFamily::log12);
    const double expect = 1.0 + 4.0 / std::log(std::numbers::e + 2.0);
    CHECK(SymbolSpec::filter(1.0, g).at<double>(4) == doctest::Approx(expect));
    CHECK(SymbolSpec::inverse_filter(1.0, g).at<double>(4) == doctest::Approx(1.0 / expect));
  }
  SUBCASE("log weight and composite") {
    const auto g = LogSymbol::family(GFamily::log14);
    const auto w = SymbolSpec::log_weight(g);
    CHECK(w.at<double>(9) == doctest::Approx(1.0 / g(3.0)));
    const auto c = SymbolSpec::composite({SymbolSpec::frac_power(1.0), w, w});
    CHECK(c.at<double>(9) == doctest::Approx(9.0 / (g(3.0) * g(3.0))));
  }
  SUBCASE("zero detection") {
    CHECK(SymbolSpec::zero().is_zero());
    CHECK(SymbolSpec::composite({SymbolSpec::frac_power(1.0), SymbolSpec::zero()}).is_zero());
    CHECK_FALSE(SymbolSpec::frac_power(1.0).is_zero());
  }
}

TEST_CASE("symbol parameter validation") {
  CHECK_THROWS_AS(SymbolSpec::frac_power(-0.1), DomainError);
  CHECK_THROWS_AS(SymbolSpec::frac_power(std::nan("")), DomainError);
  CHECK_THROWS_AS(SymbolSpec::filter(2.5), DomainError);
  CHECK_THROWS_AS(SymbolSpec::constant(INFINITY), DomainError);
  const auto bad = SymbolSpec::log_weight(LogSymbol::custom([](double) { return 0.5; }, "half"));
  CHECK_THROWS_AS(bad.at<double>(4), DomainError);
}

TEST_CASE_TEMPLATE("tables in every precision agree with the long double table", Scalar, float, double) {
  const auto grid = make_grid(16);
  const auto spec = SymbolSpec::filter(1.3, LogSymbol::family(GFamily::log14));
  const auto t = eval_symbol<Scalar>(spec, *grid);
  const auto ref = eval_symbol<long double>(spec, *grid);
  for (Eigen::Index i = 0; i < t.size(); ++i)
    CHECK(t.data()[i] == static_cast<Scalar>(ref.data()[i]));
}

TEST_CASE("filter inversion") {
  const auto grid = make_grid(16);
  SpectralScalar<double> u(grid);
  u(2, 1) = {1.0, -0.5};
  u(14, 15) = {1.0, 0.5};
  const auto v = apply_multiplier(u, SymbolSpec::filter(0.7));
  CHECK(std::abs(v(2, 1) - u(2, 1) * (1.0 + std::pow(5.0, 0.7))) < 1e-14);
  const auto back = invert_filter(v, 0.7);
  CHECK((back.coeffs - u.coeffs).cwiseAbs().maxCoeff() < 1e-15);
}
