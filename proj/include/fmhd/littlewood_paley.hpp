#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "fmhd/norms.hpp"

namespace fmhd {

namespace lp {

/// Radius below which chi is identically one.
inline constexpr double inner_radius = 0.75;
/// Radius beyond which chi vanishes.
inline constexpr double outer_radius = 4.0 / 3.0;

/// C-infinity transition from 0 (t <= 0) to 1 (t >= 1).
inline double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

/// Low-frequency cutoff: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3.
inline double chi(double xi) {
  return 1.0 - smooth_step((xi - inner_radius) / (outer_radius - inner_radius));
}

/// Dyadic bump phi(xi) = chi(xi / 2) - chi(xi), supported in 3/4 <= |xi| <= 8/3.
inline double phi(double xi) { return chi(0.5 * xi) - chi(xi); }

/// Multiplier of block j (j = -1 is the low-frequency ball).
inline double block_symbol(int j, double radius) {
  if (j < 0) return chi(radius);
  return phi(std::ldexp(radius, -j));
}

}  // namespace lp

template <typename Scalar>
struct DyadicBlock {
  int j = -1;
  SpectralScalar<Scalar> field;
};

/// Smallest J with chi(2^-(J+1) |k|) = 1 on every mode of the grid, so that
/// blocks -1..J sum to the identity.
inline int default_j_max(const Grid& grid) {
  const double kmax = std::sqrt(2.0) * (grid.n() / 2);
  int j = -1;
  while (std::ldexp(lp::inner_radius, j + 1) < kmax) ++j;
  return j;
}

template <typename Scalar>
SpectralScalar<Scalar> lp_block(const SpectralScalar<Scalar>& f, int j) {
  if (j < -1) throw DomainError("block index must be >= -1");
  SpectralScalar<Scalar> out = f;
  const auto& kn = f.grid->k_norm();
  auto* c = out.coeffs.data();
  for (Eigen::Index i = 0; i < out.coeffs.size(); ++i) c[i] *= static_cast<Scalar>(lp::block_symbol(j, kn[i]));
  return out;
}

/// Blocks Delta_j f for j = -1..j_max.
template <typename Scalar>
std::vector<DyadicBlock<Scalar>> lp_decompose(const SpectralScalar<Scalar>& f, int j_max) {
  std::vector<DyadicBlock<Scalar>> out;
  for (int j = -1; j <= j_max; ++j) out.push_back({j, lp_block(f, j)});
  return out;
}

template <typename Scalar>
std::vector<DyadicBlock<Scalar>> lp_decompose(const SpectralScalar<Scalar>& f) {
  return lp_decompose(f, default_j_max(*f.grid));
}

template <typename Scalar>
SpectralScalar<Scalar> lp_reconstruct(const std::vector<DyadicBlock<Scalar>>& blocks) {
  if (blocks.empty()) throw DomainError("no blocks to sum");
  SpectralScalar<Scalar> out(blocks.front().field.grid);
  for (const auto& b : blocks) out += b.field;
  return out;
}

/// L2 norm of every block, j = -1 first.
template <typename Scalar>
std::vector<double> lp_spectrum(const SpectralScalar<Scalar>& f) {
  std::vector<double> out;
  for (const auto& b : lp_decompose(f)) out.push_back(static_cast<double>(l2_norm(b.field)));
  return out;
}

/// l^r norm over j of 2^(j s) ||Delta_j f||_{L^p}; p or r may be infinite.
template <typename Scalar>
double besov_norm(const SpectralScalar<Scalar>& f, double s, double p, double r) {
  if (!(p >= 1.0) || !(r >= 1.0)) throw DomainError("Besov integrability indices must lie in [1, inf]");
  double acc = 0.0;
  for (const auto& b : lp_decompose(f)) {
    const double term = std::pow(2.0, b.j * s) * static_cast<double>(lp_norm(b.field, p));
    if (std::isinf(r))
      acc = std::max(acc, term);
    else
      acc += std::pow(term, r);
  }
  return std::isinf(r) ? acc : std::pow(acc, 1.0 / r);
}

struct BernsteinReport {
  int j = 0;
  double k = 0.0, a = 2.0, b = 2.0;
  /// ||Lambda^k f||_b / (2^(jk) ||f||_b)
  double lower_ratio = 0.0;
  /// ||Lambda^k f||_b / (2^(jk + 2j(1/a - 1/b)) ||f||_a)
  double upper_ratio = 0.0;
  /// Bracket implied by the annulus support when a = b = 2.
  double bracket_lo = 0.0, bracket_hi = std::numeric_limits<double>::infinity();
  bool lower_checked = false;
  bool within_bracket = false;
};

/// Empirical Bernstein ratios for a field localized in block j. The L2 bracket
/// is [(3/4)^k, (8/3)^k] (reversed for k < 0); for j = -1 only the upper end
/// applies.
template <typename Scalar>
BernsteinReport bernstein_check(const SpectralScalar<Scalar>& f, int j, double k, double a = 2.0, double b = 2.0) {
  if (!(a >= 1.0) || !(b >= a)) throw DomainError("Bernstein check needs 1 <= a <= b");
  if (j < -1) throw DomainError("block index must be >= -1");
  BernsteinReport rep;
  rep.j = j;
  rep.k = k;
  rep.a = a;
  rep.b = b;
  auto lk = f;
  const auto& kn = f.grid->k_norm();
  auto* c = lk.coeffs.data();
  for (Eigen::Index i = 0; i < lk.coeffs.size(); ++i)
    c[i] *= kn[i] == 0.0 ? Scalar(k == 0.0 ? 1 : 0) : static_cast<Scalar>(std::pow(kn[i], k));
  const double num = static_cast<double>(lp_norm(lk, b));
  const double fb = static_cast<double>(lp_norm(f, b));
  const double fa = static_cast<double>(lp_norm(f, a));
  const double inv = (std::isinf(a) ? 0.0 : 1.0 / a) - (std::isinf(b) ? 0.0 : 1.0 / b);
  rep.lower_ratio = fb > 0 ? num / (std::pow(2.0, j * k) * fb) : 0.0;
  rep.upper_ratio = fa > 0 ? num / (std::pow(2.0, j * k + 2.0 * j * inv) * fa) : 0.0;
  rep.lower_checked = j >= 0;

  const double lo = std::pow(lp::inner_radius, k);
  const double hi = std::pow(2.0 * lp::outer_radius, k);
  rep.bracket_lo = std::min(lo, hi);
  rep.bracket_hi = std::max(lo, hi);
  if (a == 2.0 && b == 2.0) {
    const double tol = 1e-12 * rep.bracket_hi;
    const bool upper_ok = rep.lower_ratio <= rep.bracket_hi + tol;
    const bool lower_ok = !rep.lower_checked || rep.lower_ratio >= rep.bracket_lo - tol;
    rep.within_bracket = upper_ok && lower_ok;
  } else {
    rep.within_bracket = std::isfinite(rep.lower_ratio) && std::isfinite(rep.upper_ratio);
  }
  return rep;
}

}  // namespace fmhd
