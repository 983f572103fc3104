#pragma once

#include <memory>
#include <vector>

namespace fmhd {

/// Uniform discretization of the 2pi-periodic torus with an n x n Fourier lattice.
///
/// Mode storage is row-major in FFT order: row r carries k1 = wavenumber(r),
/// column c carries k2 = wavenumber(c). Real samples use the same layout with
/// row r at x1 = 2 pi r / n and column c at x2 = 2 pi c / n.
class Grid {
 public:
  explicit Grid(int n);

  int n() const noexcept { return n_; }
  int size() const noexcept { return n_ * n_; }
  double length() const noexcept;
  double spacing() const noexcept { return length() / n_; }
  /// Largest |k_i| kept by the two-thirds rule.
  int dealias_cutoff() const noexcept { return n_ / 3; }

  /// Signed wavenumber of FFT index i, in [-n/2, n/2).
  int wavenumber(int i) const noexcept { return i < n_ / 2 ? i : i - n_; }
  /// Wavenumber used for spectral differentiation; zero on the Nyquist row/column.
  int diff_wavenumber(int i) const noexcept { return i == n_ / 2 ? 0 : wavenumber(i); }
  /// FFT index of -k for the index of k.
  int mirror(int i) const noexcept { return (n_ - i) % n_; }

  /// |k|^2 as an exact integer, per flat row-major mode index.
  const std::vector<long>& k_squared() const noexcept { return k2_; }
  const std::vector<double>& k_norm() const noexcept { return knorm_; }
  const std::vector<unsigned char>& dealias_mask() const noexcept { return mask_; }

  bool in_dealias_band(int r, int c) const noexcept { return mask_[r * n_ + c] != 0; }
  double node(int i) const noexcept { return spacing() * i; }

 private:
  int n_;
  std::vector<long> k2_;
  std::vector<double> knorm_;
  std::vector<unsigned char> mask_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validates 16 <= n <= 4096, n even; throws ConfigError otherwise.
GridPtr make_grid(int n);

}  // namespace fmhd
