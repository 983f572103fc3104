#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmhd/dynamics.hpp"
#include "fmhd/harness/initial_data.hpp"
#include "test_util.hpp"

using namespace fmhd;

namespace {

double rel_diff(const SpectralScalar<double>& a, const SpectralScalar<double>& b) {
  const double scale = std::max(a.coeffs.cwiseAbs().maxCoeff(), b.coeffs.cwiseAbs().maxCoeff());
  return scale == 0.0 ? 0.0 : (a.coeffs - b.coeffs).cwiseAbs().maxCoeff() / scale;
}

SystemConfig all_variants(int i) {
  const auto g = LogSymbol::family(GFamily::log14);
  switch (i) {
    case 0:
      return make_system(SystemVariant::general, 0.7, 1.3, 0.5);
    case 1:
      return make_system(SystemVariant::thm1, 0, 0.8, 0.5);
    case 2:
      return make_system(SystemVariant::thm2, 1, 0, 1, g);
    case 3:
      return make_system(SystemVariant::thm3, 0, 0, 2, LogSymbol::family(GFamily::log12));
    default:
      return make_system(SystemVariant::appendix_a, 0, 0.6, 1);
  }
}

}  // namespace

TEST_CASE("zero state has zero tendency") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, all_variants(0));
  const auto s = make_state(SpectralVector<double>(grid), SpectralVector<double>(grid), 0.0, model);
  const auto rv = rhs_velocity(s, model, {true});
  const auto rb = rhs_magnetic(s, model, {true});
  CHECK(rv[0].coeffs.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rb[1].coeffs.cwiseAbs().maxCoeff() == 0.0);
  CHECK(rhs_vorticity(s, model).coeffs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("a single-shell Taylor-Green flow is a steady state of the nonlinearity") {
  const auto grid = make_grid(32);
  for (int i = 0; i < 5; ++i) {
    const Model<double> model(grid, all_variants(i));
    auto [v, b] = taylor_green_mhd(grid, 1.0);
    const auto s = make_state(v, SpectralVector<double>(grid), 0.0, model);
    const auto rv = rhs_velocity(s, model);
    CHECK(rv[0].coeffs.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(rv[1].coeffs.cwiseAbs().maxCoeff() < 1e-14);
    CHECK(rhs_vorticity(s, model).coeffs.cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("induction term against a hand-computed field") {
  const auto grid = make_grid(32);
  const Model<double> model(grid, make_system(SystemVariant::general, 0, 0, 0));
  const auto zero = sample(*grid, [](double, double) { return 0.0; });
  const auto u = forward_transform(grid, sample(*grid, [](double, double x2) { return std::sin(x2); }), zero);
  const auto b = forward_transform(grid, zero, sample(*grid, [](double x1, double) { return std::sin(x1); }));
  const auto v = apply_multiplier(u, model.filter);
  const auto s = make_state(v, b, 0.0, model);
  CHECK(test::max_abs_diff(backward_transform(s.u[0]), backward_transform(u[0])) < 1e-15);
  const auto rb = rhs_magnetic(s, model);
  const auto e1 = sample(*grid, [](double x1, double x2) { return std::sin(x1) * std::cos(x2); });
  const auto e2 = sample(*grid, [](double x1, double x2) { return -std::cos(x1) * std::sin(x2); });
  CHECK(test::max_abs_diff(backward_transform(rb[0]), e1) < 1e-14);
  CHECK(test::max_abs_diff(backward_transform(rb[1]), e2) < 1e-14);
}

TEST_CASE("random states: curl consistency and the two induction forms") {
  const auto grid = make_grid(32);
  for (int i = 0; i < 5; ++i) {
    CAPTURE(i);
    const Model<double> model(grid, all_variants(i));
    auto [v, b] = random_band(grid, 7 + i, 1, 6, 1.0);
    const auto s = make_state(v, b, 0.0, model);
    const auto rv = rhs_velocity(s, model, {true});
    CHECK(rel_diff(vorticity_of(rv), rhs_vorticity(s, model, {true})) < 1e-11);
    const auto adv = rhs_magnetic(s, model);
    const auto div = rhs_magnetic_divergence_form(s, model);
    CHECK(rel_diff(adv[0], div[0]) < 1e-11);
    CHECK(rel_diff(adv[1], div[1]) < 1e-11);
    CHECK(divergence_defect(rv) < 1e-13);
  }
}

TEST_CASE("explicit dissipation subtracts the decay symbol") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, all_variants(0));
  auto [v, b] = random_band(grid, 3, 1, 4, 1.0);
  const auto s = make_state(v, b, 0.0, model);
  const auto with = rhs_magnetic(s, model, {true});
  const auto without = rhs_magnetic(s, model);
  const auto diff = without - with;
  const auto expect = apply_multiplier(s.b, model.magnetic_decay);
  CHECK(rel_diff(diff[0], expect[0]) < 1e-14);
}

TEST_CASE("stale caches are rejected") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, all_variants(1));
  auto [v, b] = random_band(grid, 5, 1, 4, 1.0);
  auto s = make_state(v, b, 0.0, model);
  CHECK(cache_mismatch(s, model) == 0.0);
  s.v *= 2.0;
  s.fresh = false;
  CHECK(cache_mismatch(s, model) > 0.1);
  CHECK_THROWS_AS(rhs_velocity(s, model), StaleCacheError);
  CHECK_THROWS_AS(rhs_magnetic(s, model), StaleCacheError);
  refresh(s, model);
  CHECK_NOTHROW(rhs_velocity(s, model));
  CHECK_THROWS_AS(make_state(SpectralVector<double>(make_grid(32)), b, 0.0, model), DimensionError);
}

TEST_CASE("dissipation rate of a single mode") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, make_system(SystemVariant::general, 0.5, 1.0, 0.0));
  const auto zero = SpectralScalar<double>(grid);
  const SpectralVector<double> b(zero, test::cos_mode(grid, 2, 0));
  const SpectralVector<double> v(grid);
  // <(-Delta) b, b> = 4 * ||cos 2x1||^2 = 4 * 2 pi^2
  CHECK(dissipation_rate(v, model.filtered_velocity(v), b, model) == doctest::Approx(8 * std::numbers::pi * std::numbers::pi));
}
