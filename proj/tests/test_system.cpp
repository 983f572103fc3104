#include <doctest.h>

#include <string>

#include "fmhd/errors.hpp"
#include "fmhd/system.hpp"

using namespace fmhd;

namespace {

LogSymbol gfam(GFamily f) { return LogSymbol::family(f); }

std::string message_of(SystemVariant v, double a, double b, double c, std::optional<LogSymbol> g = std::nullopt) {
  try {
    make_system(v, a, b, c, std::move(g));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("variant names roundtrip") {
  for (auto v : {SystemVariant::general, SystemVariant::thm1, SystemVariant::thm2, SystemVariant::thm3,
                 SystemVariant::appendix_a})
    CHECK(parse_variant(variant_name(v)) == v);
  CHECK_THROWS_AS(parse_variant("THM4"), ConfigError);
}

TEST_CASE("exponent ranges") {
  CHECK_THROWS_AS(make_system(SystemVariant::general, -0.1, 1, 0), ConfigError);
  CHECK_THROWS_AS(make_system(SystemVariant::general, 0, 2.1, 0), ConfigError);
  CHECK_THROWS_AS(make_system(SystemVariant::general, 0, 1, std::nan("")), ConfigError);
  CHECK_NOTHROW(make_system(SystemVariant::general, 2, 2, 2));
}

TEST_CASE("THM1 coverage") {
  CHECK(make_system(SystemVariant::thm1, 0, 0.8, 0.5).covered_regime());
  CHECK_FALSE(make_system(SystemVariant::thm1, 0, 0.7, 0.5).covered_regime());
  CHECK_FALSE(make_system(SystemVariant::thm1, 0, 0.75, 0.5).covered_regime());
  CHECK(message_of(SystemVariant::thm1, 0.2, 1, 0.5).find("alpha") != std::string::npos);
}

TEST_CASE("THM2 constraints") {
  const auto g = gfam(GFamily::log14);
  const auto s = make_system(SystemVariant::thm2, 1.2, 0, 0.8, g);
  CHECK(s.covered_regime());
  CHECK_FALSE(make_system(SystemVariant::thm2, 1.2, 0, 0.8, gfam(GFamily::log12)).covered_regime());
  const auto msg = message_of(SystemVariant::thm2, 1.0, 0, 0.8, g);
  CHECK(msg.find("alpha + gamma = 2") != std::string::npos);
  CHECK_THROWS_AS(make_system(SystemVariant::thm2, 1, 0, 1), ConfigError);
  CHECK_THROWS_AS(make_system(SystemVariant::thm2, 0, 0, 2, g), ConfigError);
  CHECK_THROWS_AS(make_system(SystemVariant::thm2, 1, 0.5, 1, g), ConfigError);
}

TEST_CASE("THM3 constraints") {
  CHECK(make_system(SystemVariant::thm3, 0, 0, 2, gfam(GFamily::log12)).covered_regime());
  CHECK_THROWS_AS(make_system(SystemVariant::thm3, 0, 0, 1.5, gfam(GFamily::log12)), ConfigError);
  CHECK_THROWS_AS(make_system(SystemVariant::thm3, 0, 0.1, 2, gfam(GFamily::log12)), ConfigError);
}

TEST_CASE("weights are only accepted where the variant uses them") {
  CHECK_THROWS_AS(make_system(SystemVariant::general, 0, 1, 1, gfam(GFamily::log14)), ConfigError);
  const auto s = make_system(SystemVariant::general, 0, 1, 1, gfam(GFamily::const1));
  CHECK_FALSE(s.g.has_value());
}

TEST_CASE("APPENDIX_A") {
  CHECK(make_system(SystemVariant::appendix_a, 0, 0.6, 1).covered_regime());
  CHECK_FALSE(make_system(SystemVariant::appendix_a, 0, 0.5, 1).covered_regime());
  CHECK_THROWS_AS(make_system(SystemVariant::appendix_a, 0, 0.6, 0.5), ConfigError);
  CHECK_FALSE(has_transpose_term(make_system(SystemVariant::appendix_a, 0, 0.6, 1)));
  CHECK(has_transpose_term(make_system(SystemVariant::thm1, 0, 0.6, 1)));
}

TEST_CASE("GENERAL coverage is the alpha = 0 slice") {
  CHECK(make_system(SystemVariant::general, 0, 1.3, 0.5).covered_regime());
  CHECK_FALSE(make_system(SystemVariant::general, 0.7, 1.3, 0.5).covered_regime());
}

TEST_CASE("dissipation and filter symbols") {
  const auto g = gfam(GFamily::log14);
  const auto thm2 = make_system(SystemVariant::thm2, 1.5, 0, 0.5, g);
  CHECK(dissipation_symbol(thm2, Equation::magnetic).is_zero());
  const double expect = std::pow(4.0, 1.5) / (g(2.0) * g(2.0));
  CHECK(dissipation_symbol(thm2, Equation::velocity).at<double>(4) == doctest::Approx(expect));
  CHECK(filter_symbol(thm2).at<double>(4) == doctest::Approx(1.0 + std::pow(4.0, 0.5) / (g(2.0) * g(2.0))));

  const auto gen = make_system(SystemVariant::general, 0.7, 0, 0.5);
  CHECK(dissipation_symbol(gen, Equation::velocity).at<double>(9) == doctest::Approx(std::pow(9.0, 0.7)));
  CHECK(dissipation_symbol(gen, Equation::magnetic).at<double>(0) == 0.0);
  CHECK(dissipation_symbol(gen, Equation::magnetic).is_zero());

  const auto thm3 = make_system(SystemVariant::thm3, 0, 0, 2, g);
  CHECK(dissipation_symbol(thm3, Equation::velocity).is_zero());
  CHECK(dissipation_symbol(thm3, Equation::magnetic).is_zero());
}
