#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fmhd/errors.hpp"
#include "fmhd/vector_ops.hpp"
#include "test_util.hpp"

using namespace fmhd;
using fmhd::test::cos_mode;
using fmhd::test::idx;

TEST_CASE("grid wavenumbers and masks") {
  const auto g = make_grid(16);
  CHECK(g->wavenumber(0) == 0);
  CHECK(g->wavenumber(7) == 7);
  CHECK(g->wavenumber(8) == -8);
  CHECK(g->wavenumber(15) == -1);
  CHECK(g->diff_wavenumber(8) == 0);
  CHECK(g->mirror(0) == 0);
  CHECK(g->mirror(3) == 13);
  CHECK(g->dealias_cutoff() == 5);
  CHECK(g->in_dealias_band(idx(*g, 5), idx(*g, -5)));
  CHECK_FALSE(g->in_dealias_band(idx(*g, 6), 0));
  CHECK(g->k_squared()[3 * 16 + 4] == 25);
  CHECK(g->k_norm()[3 * 16 + 4] == doctest::Approx(5.0));
  CHECK(g->spacing() == doctest::Approx(2 * std::numbers::pi / 16));
}

TEST_CASE("grid size validation") {
  CHECK_THROWS_AS(make_grid(15), ConfigError);
  CHECK_THROWS_AS(make_grid(8), ConfigError);
  CHECK_THROWS_AS(make_grid(8192), ConfigError);
  CHECK_NOTHROW(make_grid(4096));
}

TEST_CASE("forward transform of a cosine puts half the amplitude on +-k") {
  const auto g = make_grid(32);
  const auto x = sample(*g, [](double x1, double x2) { return 3.0 * std::cos(2 * x1 - 5 * x2); });
  const auto f = forward_transform(g, x);
  CHECK(std::abs(f(2, idx(*g, -5)) - std::complex<double>(1.5, 0)) < 1e-14);
  CHECK(std::abs(f(idx(*g, -2), 5) - std::complex<double>(1.5, 0)) < 1e-14);
  CHECK(f.coeffs.cwiseAbs().sum() == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("transform roundtrip and Parseval") {
  const auto g = make_grid(32);
  const auto x = sample(*g, [](double x1, double x2) { return std::exp(std::sin(x1) * std::cos(2 * x2)); });
  const auto f = forward_transform(g, x);
  CHECK(test::max_abs_diff(backward_transform(f), x) < 1e-13);
  const double quad = x.squaredNorm() / static_cast<double>(x.size());
  CHECK(mean_product(f, f) == doctest::Approx(quad).epsilon(1e-13));
  CHECK(l2_norm(f) == doctest::Approx(std::sqrt(torus_area() * quad)).epsilon(1e-13));
}

TEST_CASE("sample array shape is checked") {
  const auto g = make_grid(16);
  RealArray<double> x = RealArray<double>::Zero(16, 8);
  CHECK_THROWS_AS(forward_transform(g, x), DimensionError);
  CHECK_THROWS_AS(SpectralScalar<double>(g, CoeffArray<double>::Zero(4, 4)), DimensionError);
}

TEST_CASE("grid mismatch is detected") {
  const auto a = cos_mode(make_grid(16), 1, 0);
  const auto b = cos_mode(make_grid(32), 1, 0);
  CHECK_THROWS_AS(mean_product(a, b), DimensionError);
}

TEST_CASE("dealiasing removes exactly the modes outside the band") {
  const auto g = make_grid(24);
  auto f = cos_mode(g, 8, 0) + cos_mode(g, 9, 1);
  CHECK(out_of_band_max(f) == doctest::Approx(0.5));
  dealias_inplace(f);
  CHECK(out_of_band_max(f) == 0.0);
  CHECK(std::abs(f(8, 0)) == doctest::Approx(0.5));
}

TEST_CASE("enforce_hermitian restores conjugate symmetry") {
  const auto g = make_grid(16);
  SpectralScalar<double> f(g);
  f(1, 2) = {1.0, 2.0};
  f(idx(*g, -1), idx(*g, -2)) = {3.0, 0.0};
  f(0, 0) = {1.0, 1.0};
  CHECK(hermitian_defect(f) > 1.0);
  enforce_hermitian(f);
  CHECK(hermitian_defect(f) == 0.0);
  CHECK(f(1, 2) == std::complex<double>(2.0, 1.0));
  CHECK(f(0, 0).imag() == 0.0);
}

TEST_CASE("inner products integrate over the torus") {
  const auto g = make_grid(16);
  const auto c = cos_mode(g, 1, 0);
  CHECK(inner(c, c) == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
  const SpectralVector<double> v(cos_mode(g, 0, 1), cos_mode(g, 1, 0));
  CHECK(l2_norm(v) == doctest::Approx(2 * std::numbers::pi));
}

TEST_CASE_TEMPLATE("transforms in every precision", Scalar, float, double, long double) {
  const auto g = make_grid(16);
  const auto x = sample<Scalar>(*g, [](Scalar x1, Scalar x2) { return std::sin(x1) + std::cos(3 * x2); });
  const auto f = forward_transform(g, x);
  const Scalar tol = std::numeric_limits<Scalar>::epsilon() * 64;
  CHECK(test::max_abs_diff(backward_transform(f), x) < tol);
  CHECK(std::abs(f(1, 0) - std::complex<Scalar>(0, Scalar(-0.5))) < tol);
  const auto d = derivative(f, 0);
  const auto expect = sample<Scalar>(*g, [](Scalar x1, Scalar) { return std::cos(x1); });
  CHECK(test::max_abs_diff(backward_transform(d), expect) < tol);
}
