#include <doctest.h>

#include <cmath>

#include "fmhd/errors.hpp"
#include "fmhd/vector_ops.hpp"
#include "test_util.hpp"

using namespace fmhd;
using fmhd::test::cos_mode;

TEST_CASE("derivatives by hand") {
  const auto g = make_grid(32);
  const auto f = forward_transform(g, sample(*g, [](double x1, double x2) { return std::sin(2 * x1) * std::cos(x2); }));
  const auto d1 = backward_transform(derivative(f, 0));
  const auto d2 = backward_transform(derivative(f, 1));
  CHECK(test::max_abs_diff(d1, sample(*g, [](double x1, double x2) { return 2 * std::cos(2 * x1) * std::cos(x2); })) < 1e-13);
  CHECK(test::max_abs_diff(d2, sample(*g, [](double x1, double x2) { return -std::sin(2 * x1) * std::sin(x2); })) < 1e-13);
}

TEST_CASE("Nyquist mode has zero derivative") {
  const auto g = make_grid(16);
  const auto f = cos_mode(g, 8, 0);
  CHECK(derivative(f, 0).coeffs.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Leray projection") {
  const auto g = make_grid(32);
  const auto phi = forward_transform(g, sample(*g, [](double x1, double x2) { return std::cos(x1 + 2 * x2) + std::sin(3 * x1); }));
  const auto psi = forward_transform(g, sample(*g, [](double x1, double x2) { return std::sin(x1 - x2) + std::cos(2 * x2); }));
  SUBCASE("gradients are removed") {
    const auto p = leray_project(gradient(phi));
    CHECK(p[0].coeffs.cwiseAbs().maxCoeff() < 1e-15);
    CHECK(p[1].coeffs.cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("solenoidal part survives and projection is idempotent") {
    const auto w = perp_gradient(psi);
    const auto p = leray_project(w + gradient(phi));
    CHECK((p[0].coeffs - w[0].coeffs).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((p[1].coeffs - w[1].coeffs).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(divergence_defect(p) < 1e-15);
    const auto pp = leray_project(p);
    CHECK((pp[0].coeffs - p[0].coeffs).cwiseAbs().maxCoeff() < 1e-16);
  }
  SUBCASE("a gradient has a large divergence defect") { CHECK(divergence_defect(gradient(phi)) > 0.1); }
}

TEST_CASE("vorticity of the Taylor-Green velocity") {
  const auto g = make_grid(32);
  const auto v = forward_transform(g, sample(*g, [](double, double x2) { return -std::sin(x2); }),
                                   sample(*g, [](double x1, double) { return std::sin(x1); }));
  const auto w = backward_transform(vorticity_of(v));
  CHECK(test::max_abs_diff(w, sample(*g, [](double x1, double x2) { return std::cos(x1) + std::cos(x2); })) < 1e-14);
}

TEST_CASE("Biot-Savart inversion") {
  const auto g = make_grid(32);
  SUBCASE("omega = cos x1 gives v = (0, sin x1)") {
    const auto v = velocity_from_vorticity(cos_mode(g, 1, 0));
    CHECK(backward_transform(v[0]).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(test::max_abs_diff(backward_transform(v[1]), sample(*g, [](double x1, double) { return std::sin(x1); })) < 1e-14);
  }
  SUBCASE("the stream function satisfies omega = Laplacian psi") {
    const auto psi = forward_transform(g, sample(*g, [](double x1, double x2) { return std::sin(2 * x1) * std::cos(3 * x2); }));
    const auto w = vorticity_of(perp_gradient(psi));
    const auto lap = derivative(derivative(psi, 0), 0) + derivative(derivative(psi, 1), 1);
    CHECK((w.coeffs - lap.coeffs).cwiseAbs().maxCoeff() < 1e-13);
    const auto v = velocity_from_vorticity(w);
    const auto back = perp_gradient(psi);
    CHECK((v[0].coeffs - back[0].coeffs).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((v[1].coeffs - back[1].coeffs).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("nonzero mean is rejected") {
    auto w = cos_mode(g, 1, 1);
    w(0, 0) = {0.25, 0.0};
    CHECK_THROWS_AS(velocity_from_vorticity(w), DomainError);
  }
}
