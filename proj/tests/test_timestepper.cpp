#include <doctest.h>

#include <cmath>

#include "fmhd/diagnostics.hpp"
#include "fmhd/harness/initial_data.hpp"
#include "test_util.hpp"

using namespace fmhd;

namespace {

double state_distance(const SimState<double>& a, const SimState<double>& b) {
  return l2_norm(a.v - b.v) + l2_norm(a.b - b.b);
}

SimState<double> integrate(const SimState<double>& s0, const Model<double>& model, Scheme scheme, double dt,
                           double t_end) {
  StepperConfig sc;
  sc.scheme = scheme;
  sc.dt = dt;
  sc.t_end = t_end;
  return run(s0, model, sc).final_state;
}

}  // namespace

TEST_CASE("scheme names") {
  CHECK(parse_scheme(scheme_name(Scheme::if_rk4)) == Scheme::if_rk4);
  CHECK(parse_scheme("IF-RK2") == Scheme::if_rk2);
  CHECK_THROWS_AS(parse_scheme("RK4"), ConfigError);
}

TEST_CASE("linear-only stepping reproduces exact exponential decay") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, make_system(SystemVariant::general, 0.7, 1.3, 0.5));
  const auto zero = SpectralScalar<double>(grid);
  const SpectralVector<double> b(zero, test::cos_mode(grid, 3, 0));
  const SpectralVector<double> v(test::cos_mode(grid, 0, 2), zero);
  const auto s0 = make_state(v, b, 0.0, model);
  StepperConfig sc;
  sc.linear_only = true;
  sc.dt = 0.01;
  sc.t_end = 0.5;
  const auto rep = run(s0, model, sc);
  CHECK(rep.steps == 50);
  CHECK(rep.final_state.t == 0.5);
  const double eb = std::exp(-std::pow(9.0, 1.3) * 0.5);
  const double ev = std::exp(-std::pow(4.0, 0.7) * 0.5);
  CHECK(rep.final_state.b[1](3, 0).real() == doctest::Approx(0.5 * eb).epsilon(1e-13));
  CHECK(rep.final_state.v[0](0, 2).real() == doctest::Approx(0.5 * ev).epsilon(1e-13));
}

TEST_CASE("convergence orders") {
  const auto grid = make_grid(32);
  const Model<double> model(grid, make_system(SystemVariant::general, 0.5, 0.8, 0.5));
  auto [v, b] = random_band(grid, 11, 1, 4, 1.0);
  const auto s0 = make_state(v, b, 0.0, model);
  const double T = 0.2;
  const auto ref = integrate(s0, model, Scheme::if_rk4, 0.0025, T);
  SUBCASE("IF-RK4") {
    const double e1 = state_distance(integrate(s0, model, Scheme::if_rk4, 0.02, T), ref);
    const double e2 = state_distance(integrate(s0, model, Scheme::if_rk4, 0.01, T), ref);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
  }
  SUBCASE("IF-RK2") {
    const double e1 = state_distance(integrate(s0, model, Scheme::if_rk2, 0.02, T), ref);
    const double e2 = state_distance(integrate(s0, model, Scheme::if_rk2, 0.01, T), ref);
    CHECK(e1 / e2 > 3.2);
    CHECK(e1 / e2 < 5.0);
  }
}

TEST_CASE("fixed steps land exactly on t_end") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, make_system(SystemVariant::thm1, 0, 1, 0.5));
  auto [v, b] = random_band(grid, 1, 1, 3, 0.5);
  const auto s0 = make_state(v, b, 0.0, model);
  StepperConfig sc;
  sc.dt = 0.03;
  sc.t_end = 0.1;
  std::vector<double> times;
  const auto rep = run<double>(s0, model, sc, [&](const SimState<double>& s, const StepData&) { times.push_back(s.t); });
  CHECK(rep.steps == 4);
  CHECK(rep.final_state.t == 0.1);
  CHECK(times.front() == 0.0);
  CHECK(times.back() == 0.1);
  CHECK(times.size() == 5);
}

TEST_CASE("adaptive stepping also ends on t_end") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, make_system(SystemVariant::thm1, 0, 1, 0.5));
  auto [v, b] = random_band(grid, 1, 1, 3, 0.5);
  StepperConfig sc;
  sc.adaptive = true;
  sc.dt = 0.05;
  sc.t_end = 0.23;
  const auto rep = run(make_state(v, b, 0.0, model), model, sc);
  CHECK(rep.final_state.t == 0.23);
  CHECK_FALSE(rep.blowup);
}

TEST_CASE("run configuration errors") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, make_system(SystemVariant::thm1, 0, 1, 0.5));
  auto [v, b] = random_band(grid, 1, 1, 3, 1.0);
  const auto s0 = make_state(v, b, 0.0, model);
  StepperConfig sc;
  sc.dt = 1.0;
  CHECK_THROWS_AS(run(s0, model, sc), ConfigError);
  sc.dt = -0.1;
  CHECK_THROWS_AS(run(s0, model, sc), ConfigError);
  sc.dt = 0.001;
  sc.t_end = -1.0;
  CHECK_THROWS_AS(run(s0, model, sc), ConfigError);
  sc.t_end = 1.0;
  sc.cfl_target = 1.5;
  CHECK_THROWS_AS(run(s0, model, sc), ConfigError);
}

TEST_CASE("blow-up is reported, not thrown") {
  const auto grid = make_grid(16);
  const Model<double> model(grid, make_system(SystemVariant::thm1, 0, 1, 0.5));
  auto [v, b] = random_band(grid, 1, 1, 3, 1.0);
  StepperConfig sc;
  sc.dt = 0.01;
  sc.t_end = 0.1;
  sc.blowup_ceiling = 1e-3;
  const auto rep = run(make_state(v, b, 0.0, model), model, sc);
  CHECK(rep.blowup);
  CHECK(rep.steps == 1);
  CHECK(rep.blowup_time == doctest::Approx(0.01));
  CHECK_FALSE(rep.blowup_reason.empty());
}

TEST_CASE("runs are bitwise deterministic") {
  const auto grid = make_grid(32);
  const Model<double> model(grid, make_system(SystemVariant::thm2, 1, 0, 1, LogSymbol::family(GFamily::log14)));
  auto [v, b] = random_band(grid, 2, 1, 5, 1.0);
  const auto s0 = make_state(v, b, 0.0, model);
  const auto a = integrate(s0, model, Scheme::if_rk4, 0.01, 0.1);
  const auto c = integrate(s0, model, Scheme::if_rk4, 0.01, 0.1);
  CHECK((a.v[0].coeffs - c.v[0].coeffs).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.b[1].coeffs - c.b[1].coeffs).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the dissipation integral closes the energy balance") {
  const auto grid = make_grid(32);
  const Model<double> model(grid, make_system(SystemVariant::general, 0.5, 0.8, 0.5));
  auto [v, b] = random_band(grid, 4, 1, 5, 1.0);
  const auto s0 = make_state(v, b, 0.0, model);
  StepperConfig sc;
  sc.dt = 0.0025;
  sc.t_end = 0.1;
  const auto rep = run(s0, model, sc);
  const double e0 = energy(s0, model);
  const double e1 = energy(rep.final_state, model);
  CHECK(std::abs(e1 - e0 + rep.dissipation_integral) / e0 < 1e-8);
  CHECK(rep.dissipation_integral > 0.0);
}

TEST_CASE("single precision stepping tracks double precision") {
  const auto grid = make_grid(16);
  const auto cfg = make_system(SystemVariant::thm1, 0, 1, 0.5);
  const Model<double> md(grid, cfg);
  const Model<float> mf(grid, cfg);
  auto [v, b] = random_band(grid, 9, 1, 3, 1.0);
  const auto cast = [&](const SpectralVector<double>& f) {
    return SpectralVector<float>(SpectralScalar<float>(grid, f[0].coeffs.cast<std::complex<float>>()),
                                 SpectralScalar<float>(grid, f[1].coeffs.cast<std::complex<float>>()));
  };
  StepperConfig sc;
  sc.dt = 0.01;
  sc.t_end = 0.1;
  const auto rd = run(make_state(v, b, 0.0, md), md, sc).final_state;
  const auto rf = run(make_state(cast(v), cast(b), 0.0, mf), mf, sc).final_state;
  const double diff = (rd.v[0].coeffs.cast<std::complex<float>>() - rf.v[0].coeffs).cwiseAbs().maxCoeff();
  CHECK(diff < 1e-5);
}
