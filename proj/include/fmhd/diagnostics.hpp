#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmhd/dynamics.hpp"
#include "fmhd/littlewood_paley.hpp"
#include "fmhd/norms.hpp"
#include "fmhd/timestepper.hpp"

namespace fmhd {

// ---------------------------------------------------------------------------
// Energies

/// Quadratic invariant of the inviscid part for each variant:
///   GENERAL, THM1   ||u||^2 + ||Lambda^gamma u||^2 + ||b||^2
///   THM2            ||u||^2 + ||Lambda^gamma L u||^2 + ||b||^2
///   THM3            ||u||^2 + ||Lambda^2 / g(Lambda) u||^2 + ||b||^2
///   APPENDIX_A      ||u||^2 + ||grad u||^2 + ||b||^2
template <typename Scalar>
Scalar energy(const SimState<Scalar>& s, const Model<Scalar>& model) {
  require_fresh(s);
  Scalar regularized = 0;
  for (int i = 0; i < 2; ++i)
    regularized += s.u[i].coeffs.array().abs2().cwiseProduct(model.filter.array() - Scalar(1)).sum();
  const Scalar u2 = sobolev_norm(s.u, 0.0);
  const Scalar b2 = sobolev_norm(s.b, 0.0);
  return u2 * u2 + torus_area<Scalar>() * regularized + b2 * b2;
}

/// ||Lambda^beta b||^2 when the b-equation dissipates, else 0.
template <typename Scalar>
Scalar magnetic_dissipation(const SimState<Scalar>& s, const Model<Scalar>& model) {
  Scalar acc = 0;
  for (int i = 0; i < 2; ++i) acc += s.b[i].coeffs.array().abs2().cwiseProduct(model.magnetic_decay.array()).sum();
  return torus_area<Scalar>() * acc;
}

/// D with dE/dt = -2 D.
template <typename Scalar>
Scalar total_dissipation(const SimState<Scalar>& s, const Model<Scalar>& model) {
  return dissipation_rate(s.v, s.u, s.b, model);
}

/// ||b||_inf^3 + ||b||_inf^6 + ||grad b||_2^3 + ||v||_2^2 (THM2 and THM3).
template <typename Scalar>
Scalar V_functional(const SimState<Scalar>& s, const Model<Scalar>& model) {
  const auto v = model.config.variant;
  if (v != SystemVariant::thm2 && v != SystemVariant::thm3)
    throw ConfigError("V(t) is defined for THM2 and THM3 only");
  const Scalar binf = linf_norm(s.b);
  const Scalar gb = grad_l2(s.b);
  const Scalar v2 = sobolev_norm(s.v, 0.0);
  return binf * binf * binf + std::pow(binf, Scalar(6)) + gb * gb * gb + v2 * v2;
}

/// ||L Lambda^alpha v||_2^2 (THM2 only).
template <typename Scalar>
Scalar H_functional(const SimState<Scalar>& s, const Model<Scalar>& model) {
  if (model.config.variant != SystemVariant::thm2) throw ConfigError("H(t) is defined for THM2 only");
  const auto lv = apply_multiplier(s.v, SymbolSpec::log_weight(*model.config.g));
  const Scalar h = sobolev_norm(lv, model.config.alpha);
  return h * h;
}

// ---------------------------------------------------------------------------
// Cancellation identities

/// Normalized residuals of the trilinear cancellations. Each residual is the
/// magnitude of the identity's left side divided by a Hoelder bound on the sum
/// of absolute values of its terms, so it lies in [0, 1] and is zero in exact
/// arithmetic.
struct CancellationResiduals {
  double lorentz = 0.0;    // int (b.grad b).u + int (b.grad u).b
  double transport = 0.0;  // int (u.grad v).u + int (sum_j v_j grad u_j).u
  double helmholtz = 0.0;  // int (u.grad w).u with w = u - Delta u
};

namespace detail {

/// Samples of (a.grad) B, truncated to the two-thirds band.
template <typename Scalar>
std::array<RealArray<Scalar>, 2> advect(const SpectralVector<Scalar>& a, const SpectralVector<Scalar>& B) {
  const auto ap = to_physical(a);
  const auto gB = gradient_samples(B);
  std::array<RealArray<Scalar>, 2> out;
  for (int i = 0; i < 2; ++i) {
    const RealArray<Scalar> prod = ap[0].cwiseProduct(gB[0][i]) + ap[1].cwiseProduct(gB[1][i]);
    out[i] = backward_transform(to_spectral(a.grid(), prod));
  }
  return out;
}

template <typename Scalar>
Scalar quadrature(const std::array<RealArray<Scalar>, 2>& f, const std::array<RealArray<Scalar>, 2>& g) {
  const Scalar cell = torus_area<Scalar>() / static_cast<Scalar>(f[0].size());
  return (f[0].cwiseProduct(g[0]) + f[1].cwiseProduct(g[1])).sum() * cell;
}

template <typename Scalar>
Scalar ratio(Scalar num, Scalar bound) {
  return bound > Scalar(0) ? std::abs(num) / bound : Scalar(0);
}

/// Jacobian Frobenius L2 norm.
template <typename Scalar>
Scalar jacobian_l2(const SpectralVector<Scalar>& f) {
  return grad_l2(f);
}

}  // namespace detail

/// Residuals for arbitrary fields (u need not be solenoidal: negative controls).
template <typename Scalar>
CancellationResiduals cancellation_residuals(const SpectralVector<Scalar>& u, const SpectralVector<Scalar>& v,
                                             const SpectralVector<Scalar>& b) {
  const auto up = detail::to_physical(u);
  const auto bp = detail::to_physical(b);
  const Scalar u_inf = linf_norm(u), b_inf = linf_norm(b);
  const Scalar u_2 = l2_norm(u), b_2 = l2_norm(b), v_2 = l2_norm(v);
  const Scalar gu = detail::jacobian_l2(u), gb = detail::jacobian_l2(b), gv = detail::jacobian_l2(v);

  CancellationResiduals r;
  {
    const Scalar i1 = detail::quadrature(detail::advect(b, b), up);
    const Scalar i2 = detail::quadrature(detail::advect(b, u), bp);
    r.lorentz = static_cast<double>(detail::ratio(i1 + i2, b_inf * gb * u_2 + b_inf * gu * b_2));
  }
  {
    const Scalar i1 = detail::quadrature(detail::advect(u, v), up);
    // (sum_j v_j d_i u_j) u_i
    const auto vp = detail::to_physical(v);
    const auto gU = detail::gradient_samples(u);
    std::array<RealArray<Scalar>, 2> t;
    for (int i = 0; i < 2; ++i) {
      const RealArray<Scalar> prod = vp[0].cwiseProduct(gU[i][0]) + vp[1].cwiseProduct(gU[i][1]);
      t[i] = backward_transform(detail::to_spectral(u.grid(), prod));
    }
    const Scalar i2 = detail::quadrature(t, up);
    r.transport = static_cast<double>(detail::ratio(i1 + i2, u_inf * gv * u_2 + u_inf * gu * v_2));
  }
  {
    const auto w = apply_multiplier(u, SymbolSpec::filter(1.0));
    const Scalar i = detail::quadrature(detail::advect(u, w), up);
    r.helmholtz = static_cast<double>(detail::ratio(i, u_inf * detail::jacobian_l2(w) * u_2));
  }
  return r;
}

template <typename Scalar>
CancellationResiduals cancellation_residuals(const SimState<Scalar>& s) {
  require_fresh(s);
  return cancellation_residuals(s.u, s.v, s.b);
}

/// Normalized int (u.grad u).Delta u, which vanishes for solenoidal u in 2D.
template <typename Scalar>
double laplacian_transport_residual(const SpectralVector<Scalar>& u) {
  auto lap = apply_multiplier(u, SymbolSpec::frac_power(1.0));
  lap *= Scalar(-1);
  const Scalar i = detail::quadrature(detail::advect(u, u), detail::to_physical(lap));
  return static_cast<double>(detail::ratio(i, linf_norm(u) * detail::jacobian_l2(u) * l2_norm(lap)));
}

// ---------------------------------------------------------------------------
// Records

/// ||Lambda^s f|| for the four monitored fields at one exponent.
struct SobolevSample {
  double s = 0.0;
  double u = 0.0, v = 0.0, b = 0.0, omega = 0.0;
};

struct LinfSample {
  double b = 0.0, omega = 0.0, grad_b = 0.0, grad_u = 0.0;
};

struct DiagnosticsRecord {
  long sequence = 0;
  long step = 0;
  double t = 0.0;
  double energy_total = 0.0;
  double dissipation = 0.0;           // D in dE/dt = -2 D
  double magnetic_dissipation = 0.0;  // ||Lambda^beta b||^2
  double dissipation_integral = 0.0;  // 2 int_0^t D
  std::vector<SobolevSample> sobolev;
  LinfSample linf;
  std::optional<double> V;
  std::optional<double> H;
  CancellationResiduals residuals;
  /// Block L2 norms of omega, j = -1 first.
  std::vector<double> lp_spectrum;
};

template <typename Scalar>
DiagnosticsRecord make_record(const SimState<Scalar>& s, const Model<Scalar>& model, const StepData& data,
                              std::span<const double> exponents, long sequence) {
  require_fresh(s);
  DiagnosticsRecord r;
  r.sequence = sequence;
  r.step = data.step;
  r.t = s.t;
  r.energy_total = static_cast<double>(energy(s, model));
  r.dissipation = static_cast<double>(total_dissipation(s, model));
  r.magnetic_dissipation = static_cast<double>(magnetic_dissipation(s, model));
  r.dissipation_integral = data.dissipation_integral;
  for (double e : exponents) {
    r.sobolev.push_back({e, static_cast<double>(sobolev_norm(s.u, e)), static_cast<double>(sobolev_norm(s.v, e)),
                         static_cast<double>(sobolev_norm(s.b, e)), static_cast<double>(sobolev_norm(s.omega, e))});
  }
  r.linf = {static_cast<double>(linf_norm(s.b)), static_cast<double>(linf_norm(s.omega)),
            static_cast<double>(grad_linf(s.b)), static_cast<double>(grad_linf(s.u))};
  const auto variant = model.config.variant;
  if (variant == SystemVariant::thm2 || variant == SystemVariant::thm3)
    r.V = static_cast<double>(V_functional(s, model));
  if (variant == SystemVariant::thm2) r.H = static_cast<double>(H_functional(s, model));
  r.residuals = cancellation_residuals(s);
  r.lp_spectrum = lp_spectrum(s.omega);
  return r;
}

/// |E_b - E_a + (Q_b - Q_a)| / max(E_a, 1) for consecutive records, where Q is
/// the accumulated 2 int D dt.
inline double energy_balance_residual(const DiagnosticsRecord& a, const DiagnosticsRecord& b) {
  if (b.sequence != a.sequence + 1) throw std::invalid_argument("energy balance needs consecutive records");
  return std::abs(b.energy_total - a.energy_total + (b.dissipation_integral - a.dissipation_integral)) /
         std::max(a.energy_total, 1.0);
}

/// Same balance between the first and last record of a history.
inline double energy_balance_drift(std::span<const DiagnosticsRecord> history) {
  if (history.size() < 2) return 0.0;
  const auto& a = history.front();
  const auto& b = history.back();
  return std::abs(b.energy_total - a.energy_total + (b.dissipation_integral - a.dissipation_integral)) /
         std::max(a.energy_total, 1.0);
}

// ---------------------------------------------------------------------------
// Multiplier bounds behind ||grad u||_inf <= C(||omega||_2 + ||omega||_inf) and
// ||Lambda^(s+sigma) u||_2 <= ||Lambda^s omega||_2 for sigma <= 1 + 2 gamma.

struct MultiplierBoundReport {
  double gamma = 0.0, s = 0.0, sigma = 0.0;
  bool expected_to_hold = false;      // sigma <= 1 + 2 gamma
  double max_symbol = 0.0;            // max over |k| >= 1 of |k|^(sigma-1) / (1 + |k|^(2 gamma))
  double argmax_radius = 0.0;
  bool symbol_bound_holds = false;    // max_symbol <= 1
  double max_sobolev_ratio = 0.0;     // max over samples of ||Lambda^(s+sigma) u|| / ||Lambda^s omega||
  double max_gradient_ratio = 0.0;    // max over samples of ||grad u||_inf / (||omega||_2 + ||omega||_inf)
};

template <typename Scalar>
MultiplierBoundReport multiplier_bound_check(double gamma, double s, double sigma, const Grid& grid,
                                             std::span<const SpectralVector<Scalar>> samples = {}) {
  MultiplierBoundReport rep;
  rep.gamma = gamma;
  rep.s = s;
  rep.sigma = sigma;
  rep.expected_to_hold = sigma <= 1.0 + 2.0 * gamma;
  const auto& k2 = grid.k_squared();
  const auto& kn = grid.k_norm();
  for (std::size_t i = 0; i < k2.size(); ++i) {
    if (k2[i] == 0) continue;
    const double k = kn[i];
    const double m = std::pow(k, sigma - 1.0) / (1.0 + std::pow(static_cast<double>(k2[i]), gamma));
    if (m > rep.max_symbol) {
      rep.max_symbol = m;
      rep.argmax_radius = k;
    }
  }
  rep.symbol_bound_holds = rep.max_symbol <= 1.0;
  for (const auto& v : samples) {
    const auto u = invert_filter(v, gamma);
    const auto w = vorticity_of(v);
    const Scalar lhs = sobolev_norm(u, s + sigma);
    const Scalar rhs = sobolev_norm(w, s);
    if (rhs > Scalar(0)) rep.max_sobolev_ratio = std::max(rep.max_sobolev_ratio, static_cast<double>(lhs / rhs));
    const Scalar denom = l2_norm(w) + linf_norm(w);
    if (denom > Scalar(0))
      rep.max_gradient_ratio = std::max(rep.max_gradient_ratio, static_cast<double>(grad_linf(u) / denom));
  }
  return rep;
}

}  // namespace fmhd
