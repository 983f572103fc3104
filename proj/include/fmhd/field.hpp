#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>

#include "fmhd/errors.hpp"
#include "fmhd/fft.hpp"
#include "fmhd/grid.hpp"

namespace fmhd {

template <typename Scalar>
using CoeffArray = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using RealArray = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Real scalar field on the torus, stored as Fourier amplitudes
/// f(x) = sum_k coeffs(k) exp(i k.x).
template <typename Scalar = double>
struct SpectralScalar {
  using scalar_type = Scalar;

  GridPtr grid;
  CoeffArray<Scalar> coeffs;

  SpectralScalar() = default;
  explicit SpectralScalar(GridPtr g) : grid(std::move(g)), coeffs(CoeffArray<Scalar>::Zero(grid->n(), grid->n())) {}
  SpectralScalar(GridPtr g, CoeffArray<Scalar> c) : grid(std::move(g)), coeffs(std::move(c)) {
    if (coeffs.rows() != grid->n() || coeffs.cols() != grid->n()) {
      throw DimensionError("coefficient array does not match grid size");
    }
  }

  int n() const { return grid->n(); }
  std::complex<Scalar>& operator()(int r, int c) { return coeffs(r, c); }
  const std::complex<Scalar>& operator()(int r, int c) const { return coeffs(r, c); }

  SpectralScalar& operator+=(const SpectralScalar& o) {
    coeffs += o.coeffs;
    return *this;
  }
  SpectralScalar& operator-=(const SpectralScalar& o) {
    coeffs -= o.coeffs;
    return *this;
  }
  SpectralScalar& operator*=(Scalar a) {
    coeffs *= a;
    return *this;
  }
};

template <typename Scalar>
SpectralScalar<Scalar> operator+(SpectralScalar<Scalar> a, const SpectralScalar<Scalar>& b) {
  return a += b;
}
template <typename Scalar>
SpectralScalar<Scalar> operator-(SpectralScalar<Scalar> a, const SpectralScalar<Scalar>& b) {
  return a -= b;
}
template <typename Scalar>
SpectralScalar<Scalar> operator*(Scalar s, SpectralScalar<Scalar> a) {
  return a *= s;
}
template <typename Scalar>
SpectralScalar<Scalar> operator-(SpectralScalar<Scalar> a) {
  a.coeffs = -a.coeffs;
  return a;
}

/// Two-component field (v1, v2) sharing one grid.
template <typename Scalar = double>
struct SpectralVector {
  using scalar_type = Scalar;

  std::array<SpectralScalar<Scalar>, 2> comp;

  SpectralVector() = default;
  explicit SpectralVector(const GridPtr& g) : comp{SpectralScalar<Scalar>(g), SpectralScalar<Scalar>(g)} {}
  SpectralVector(SpectralScalar<Scalar> a, SpectralScalar<Scalar> b) : comp{std::move(a), std::move(b)} {
    if (comp[0].n() != comp[1].n()) throw DimensionError("vector components live on different grids");
  }

  const GridPtr& grid() const { return comp[0].grid; }
  int n() const { return comp[0].n(); }
  SpectralScalar<Scalar>& operator[](int i) { return comp[i]; }
  const SpectralScalar<Scalar>& operator[](int i) const { return comp[i]; }

  SpectralVector& operator+=(const SpectralVector& o) {
    comp[0] += o.comp[0];
    comp[1] += o.comp[1];
    return *this;
  }
  SpectralVector& operator-=(const SpectralVector& o) {
    comp[0] -= o.comp[0];
    comp[1] -= o.comp[1];
    return *this;
  }
  SpectralVector& operator*=(Scalar a) {
    comp[0] *= a;
    comp[1] *= a;
    return *this;
  }
};

template <typename Scalar>
SpectralVector<Scalar> operator+(SpectralVector<Scalar> a, const SpectralVector<Scalar>& b) {
  return a += b;
}
template <typename Scalar>
SpectralVector<Scalar> operator-(SpectralVector<Scalar> a, const SpectralVector<Scalar>& b) {
  return a -= b;
}
template <typename Scalar>
SpectralVector<Scalar> operator*(Scalar s, SpectralVector<Scalar> a) {
  return a *= s;
}

template <typename Scalar>
const Grid& grid_of(const SpectralScalar<Scalar>& f) {
  return *f.grid;
}
template <typename Scalar>
const Grid& grid_of(const SpectralVector<Scalar>& f) {
  return *f.grid();
}

template <typename Scalar>
void require_same_grid(const SpectralScalar<Scalar>& a, const SpectralScalar<Scalar>& b) {
  if (a.n() != b.n()) {
    throw DimensionError("operands live on grids of size " + std::to_string(a.n()) + " and " +
                         std::to_string(b.n()));
  }
}

// ---------------------------------------------------------------------------
// Transforms

/// Fourier amplitudes of real samples: coeffs(k) = n^-2 sum_x f(x) exp(-i k.x).
template <typename Scalar>
SpectralScalar<Scalar> forward_transform(const GridPtr& grid, const RealArray<Scalar>& values) {
  const int n = grid->n();
  if (values.rows() != n || values.cols() != n) {
    throw DimensionError("sample array is " + std::to_string(values.rows()) + "x" + std::to_string(values.cols()) +
                         ", grid expects " + std::to_string(n) + "x" + std::to_string(n));
  }
  CoeffArray<Scalar> in = values.template cast<std::complex<Scalar>>();
  SpectralScalar<Scalar> out(grid);
  FftPlans<Scalar>::get(n).forward(in.data(), out.coeffs.data());
  out.coeffs *= Scalar(1) / (Scalar(n) * Scalar(n));
  return out;
}

/// Real samples of a field; the imaginary residue of the inverse sum is discarded.
template <typename Scalar>
RealArray<Scalar> backward_transform(const SpectralScalar<Scalar>& field) {
  const int n = field.n();
  CoeffArray<Scalar> out(n, n);
  FftPlans<Scalar>::get(n).backward(field.coeffs.data(), out.data());
  return out.real();
}

template <typename Scalar>
SpectralVector<Scalar> forward_transform(const GridPtr& grid, const RealArray<Scalar>& v1,
                                         const RealArray<Scalar>& v2) {
  return {forward_transform(grid, v1), forward_transform(grid, v2)};
}

/// Samples f(x1, x2) on the collocation nodes.
template <typename Scalar = double, typename F>
RealArray<Scalar> sample(const Grid& grid, F&& f) {
  const int n = grid.n();
  RealArray<Scalar> out(n, n);
  const Scalar h = Scalar(2) * std::numbers::pi_v<Scalar> / Scalar(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = static_cast<Scalar>(f(h * Scalar(r), h * Scalar(c)));
  return out;
}

// ---------------------------------------------------------------------------
// Spectral hygiene

/// Zeros every mode outside the two-thirds band.
template <typename Scalar>
void dealias_inplace(SpectralScalar<Scalar>& f) {
  const auto& mask = f.grid->dealias_mask();
  auto* data = f.coeffs.data();
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i)
    if (!mask[i]) data[i] = {};
}

template <typename Scalar>
SpectralScalar<Scalar> dealias(SpectralScalar<Scalar> f) {
  dealias_inplace(f);
  return f;
}

template <typename Scalar>
SpectralVector<Scalar> dealias(SpectralVector<Scalar> f) {
  dealias_inplace(f[0]);
  dealias_inplace(f[1]);
  return f;
}

/// Restores coeffs(-k) = conj(coeffs(k)) by averaging each conjugate pair.
template <typename Scalar>
void enforce_hermitian(SpectralScalar<Scalar>& f) {
  const Grid& g = *f.grid;
  const int n = g.n();
  for (int r = 0; r < n; ++r) {
    const int mr = g.mirror(r);
    for (int c = 0; c < n; ++c) {
      const int mc = g.mirror(c);
      const long self = static_cast<long>(r) * n + c;
      const long partner = static_cast<long>(mr) * n + mc;
      if (partner < self) continue;
      if (partner == self) {
        f(r, c) = {f(r, c).real(), Scalar(0)};
        continue;
      }
      const std::complex<Scalar> avg = (f(r, c) + std::conj(f(mr, mc))) * Scalar(0.5);
      f(r, c) = avg;
      f(mr, mc) = std::conj(avg);
    }
  }
}

template <typename Scalar>
void enforce_hermitian(SpectralVector<Scalar>& f) {
  enforce_hermitian(f[0]);
  enforce_hermitian(f[1]);
}

/// Largest |coeffs(k) - conj(coeffs(-k))|.
template <typename Scalar>
Scalar hermitian_defect(const SpectralScalar<Scalar>& f) {
  const Grid& g = *f.grid;
  Scalar worst = 0;
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c)
      worst = std::max(worst, std::abs(f(r, c) - std::conj(f(g.mirror(r), g.mirror(c)))));
  return worst;
}

/// Largest modulus among modes outside the two-thirds band.
template <typename Scalar>
Scalar out_of_band_max(const SpectralScalar<Scalar>& f) {
  const auto& mask = f.grid->dealias_mask();
  Scalar worst = 0;
  for (Eigen::Index i = 0; i < f.coeffs.size(); ++i)
    if (!mask[i]) worst = std::max(worst, std::abs(f.coeffs.data()[i]));
  return worst;
}

// ---------------------------------------------------------------------------
// Quadratic forms (Parseval)

/// Sum_k Re(a(k) conj(b(k))) = mean over the torus of a(x) b(x).
template <typename Scalar>
Scalar mean_product(const SpectralScalar<Scalar>& a, const SpectralScalar<Scalar>& b) {
  require_same_grid(a, b);
  return (a.coeffs.array() * b.coeffs.array().conjugate()).real().sum();
}

template <typename Scalar>
Scalar mean_product(const SpectralVector<Scalar>& a, const SpectralVector<Scalar>& b) {
  return mean_product(a[0], b[0]) + mean_product(a[1], b[1]);
}

/// Torus area (2 pi)^2; converts means into integrals.
template <typename Scalar = double>
constexpr Scalar torus_area() {
  return Scalar(4) * std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
}

/// Integral over the torus of a(x) . b(x).
template <typename Field>
auto inner(const Field& a, const Field& b) {
  using Scalar = typename Field::scalar_type;
  return torus_area<Scalar>() * mean_product(a, b);
}

/// L2 norm over the torus.
template <typename Field>
auto l2_norm(const Field& f) {
  return std::sqrt(inner(f, f));
}

}  // namespace fmhd
