#pragma once

#include <complex>

#include "fmhd/field.hpp"

namespace fmhd {

/// d/dx_axis by multiplication with i k_axis (zero on the Nyquist line).
template <typename Scalar>
SpectralScalar<Scalar> derivative(const SpectralScalar<Scalar>& f, int axis) {
  const Grid& g = *f.grid;
  const int n = g.n();
  SpectralScalar<Scalar> out(f.grid);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Scalar k = static_cast<Scalar>(g.diff_wavenumber(axis == 0 ? r : c));
      const std::complex<Scalar> z = f(r, c);
      out(r, c) = {-k * z.imag(), k * z.real()};
    }
  }
  return out;
}

template <typename Scalar>
SpectralScalar<Scalar> divergence(const SpectralVector<Scalar>& f) {
  return derivative(f[0], 0) + derivative(f[1], 1);
}

template <typename Scalar>
SpectralVector<Scalar> gradient(const SpectralScalar<Scalar>& s) {
  return {derivative(s, 0), derivative(s, 1)};
}

/// (-d2 s, d1 s).
template <typename Scalar>
SpectralVector<Scalar> perp_gradient(const SpectralScalar<Scalar>& s) {
  return {-derivative(s, 1), derivative(s, 0)};
}

/// Scalar curl d1 v2 - d2 v1.
template <typename Scalar>
SpectralScalar<Scalar> vorticity_of(const SpectralVector<Scalar>& v) {
  return derivative(v[1], 0) - derivative(v[0], 1);
}

/// Orthogonal projection onto divergence-free fields, v - k (k.v) / |k|^2 per
/// mode. Modes with vanishing differentiation wavenumber (the mean) pass through.
template <typename Scalar>
SpectralVector<Scalar> leray_project(SpectralVector<Scalar> f) {
  const Grid& g = *f.grid();
  const int n = g.n();
  for (int r = 0; r < n; ++r) {
    const Scalar k1 = static_cast<Scalar>(g.diff_wavenumber(r));
    for (int c = 0; c < n; ++c) {
      const Scalar k2 = static_cast<Scalar>(g.diff_wavenumber(c));
      const Scalar kk = k1 * k1 + k2 * k2;
      if (kk == Scalar(0)) continue;
      const std::complex<Scalar> kdotf = k1 * f[0](r, c) + k2 * f[1](r, c);
      f[0](r, c) -= k1 * kdotf / kk;
      f[1](r, c) -= k2 * kdotf / kk;
    }
  }
  return f;
}

/// Divergence-free velocity with the given vorticity and zero mean:
/// v = perp_gradient(psi) with Laplacian(psi) = omega.
/// Throws DomainError if omega has a nonzero mean.
template <typename Scalar>
SpectralVector<Scalar> velocity_from_vorticity(const SpectralScalar<Scalar>& omega, Scalar mean_tol = Scalar(1e-12)) {
  using std::abs;
  Scalar scale = omega.coeffs.cwiseAbs().maxCoeff();
  if (abs(omega(0, 0)) > mean_tol * std::max(scale, Scalar(1))) {
    throw DomainError("vorticity has a nonzero mean; Biot-Savart inversion is undefined");
  }
  const Grid& g = *omega.grid;
  const int n = g.n();
  SpectralScalar<Scalar> psi(omega.grid);
  for (int r = 0; r < n; ++r) {
    const long k1 = g.diff_wavenumber(r);
    for (int c = 0; c < n; ++c) {
      const long k2 = g.diff_wavenumber(c);
      const long kk = k1 * k1 + k2 * k2;
      if (kk != 0) psi(r, c) = -omega(r, c) / static_cast<Scalar>(kk);
    }
  }
  return perp_gradient(psi);
}

/// Largest |k.v(k)| / |v(k)| over nonzero modes; zero for an exactly solenoidal field.
template <typename Scalar>
Scalar divergence_defect(const SpectralVector<Scalar>& f) {
  const Grid& g = *f.grid();
  const int n = g.n();
  Scalar worst = 0;
  Scalar scale = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) scale = std::max(scale, std::abs(f[0](r, c)) + std::abs(f[1](r, c)));
  if (scale == Scalar(0)) return 0;
  for (int r = 0; r < n; ++r) {
    const Scalar k1 = static_cast<Scalar>(g.diff_wavenumber(r));
    for (int c = 0; c < n; ++c) {
      const Scalar k2 = static_cast<Scalar>(g.diff_wavenumber(c));
      const Scalar kn = std::sqrt(k1 * k1 + k2 * k2);
      if (kn == Scalar(0)) continue;
      worst = std::max(worst, std::abs(k1 * f[0](r, c) + k2 * f[1](r, c)) / kn);
    }
  }
  return worst / scale;
}

}  // namespace fmhd
