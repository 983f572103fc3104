#pragma once

#include <cmath>

#include "fmhd/field.hpp"
#include "fmhd/vector_ops.hpp"

namespace fmhd {

// ---------------------------------------------------------------------------
// Norms

/// ||Lambda^s f||_{L2} over the torus. The mean mode only counts for s = 0.
template <typename Scalar>
Scalar sobolev_norm(const SpectralScalar<Scalar>& f, double s) {
  if (!(s >= -2.0 && s <= 12.0)) throw DomainError("Sobolev exponent must lie in [-2, 12]");
  const auto& k2 = f.grid->k_squared();
  Scalar acc = 0;
  const auto* c = f.coeffs.data();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i) {
    const Scalar a = std::norm(c[i]);
    if (k2[i] == 0) {
      if (s == 0.0) acc += a;
      continue;
    }
    acc += (s == 0.0 ? Scalar(1) : std::pow(static_cast<Scalar>(k2[i]), static_cast<Scalar>(s))) * a;
  }
  return std::sqrt(torus_area<Scalar>() * acc);
}

template <typename Scalar>
Scalar sobolev_norm(const SpectralVector<Scalar>& f, double s) {
  const Scalar a = sobolev_norm(f[0], s);
  const Scalar b = sobolev_norm(f[1], s);
  return std::sqrt(a * a + b * b);
}

/// Samples on a grid refined by `oversample` (zero-padded spectrum).
template <typename Scalar>
RealArray<Scalar> physical_samples(const SpectralScalar<Scalar>& f, int oversample = 1) {
  if (oversample == 1) return backward_transform(f);
  if (oversample < 1) throw DomainError("oversampling factor must be >= 1");
  const Grid& g = *f.grid;
  const auto fine = make_grid(g.n() * oversample);
  SpectralScalar<Scalar> padded(fine);
  for (int r = 0; r < g.n(); ++r) {
    const int k1 = g.wavenumber(r);
    if (k1 == -g.n() / 2) continue;
    const int fr = k1 < 0 ? k1 + fine->n() : k1;
    for (int c = 0; c < g.n(); ++c) {
      const int k2 = g.wavenumber(c);
      if (k2 == -g.n() / 2) continue;
      padded(fr, k2 < 0 ? k2 + fine->n() : k2) = f(r, c);
    }
  }
  return backward_transform(padded);
}

/// max |f| over the collocation points (optionally of a refined grid).
template <typename Scalar>
Scalar linf_norm(const SpectralScalar<Scalar>& f, int oversample = 1) {
  return physical_samples(f, oversample).cwiseAbs().maxCoeff();
}

/// max of the pointwise Euclidean length |f(x)|.
template <typename Scalar>
Scalar linf_norm(const SpectralVector<Scalar>& f, int oversample = 1) {
  const auto a = physical_samples(f[0], oversample);
  const auto b = physical_samples(f[1], oversample);
  return (a.array().square() + b.array().square()).sqrt().maxCoeff();
}

/// max over points of |grad f| (Frobenius norm of the Jacobian for vectors).
template <typename Scalar>
Scalar grad_linf(const SpectralScalar<Scalar>& f, int oversample = 1) {
  return linf_norm(gradient(f), oversample);
}

template <typename Scalar>
Scalar grad_linf(const SpectralVector<Scalar>& f, int oversample = 1) {
  RealArray<Scalar> acc = RealArray<Scalar>::Zero(f.n() * oversample, f.n() * oversample);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) acc.array() += physical_samples(derivative(f[i], j), oversample).array().square();
  return acc.cwiseSqrt().maxCoeff();
}

/// ||grad f||_{L2}; equals ||Lambda f||_{L2}.
template <typename Field>
auto grad_l2(const Field& f) {
  return sobolev_norm(f, 1.0);
}

/// L^p norm over the torus by collocation quadrature; p = inf gives the sup norm.
template <typename Scalar>
Scalar lp_norm(const SpectralScalar<Scalar>& f, double p) {
  if (!(p >= 1.0)) throw DomainError("integrability exponent must lie in [1, inf]");
  const auto x = backward_transform(f);
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  const Scalar cell = torus_area<Scalar>() / static_cast<Scalar>(x.size());
  return std::pow(x.array().abs().pow(static_cast<Scalar>(p)).sum() * cell, Scalar(1) / static_cast<Scalar>(p));
}

}  // namespace fmhd
