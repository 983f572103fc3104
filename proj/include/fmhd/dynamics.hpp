#pragma once

#include <array>
#include <utility>

#include "fmhd/model.hpp"

namespace fmhd {

/// Options for right-hand-side assembly.
struct RhsOptions {
  /// Subtract the linear dissipation term explicitly (off when an integrating
  /// factor handles it).
  bool include_dissipation = false;
};

namespace detail {

template <typename Scalar>
using Samples = RealArray<Scalar>;

template <typename Scalar>
std::array<Samples<Scalar>, 2> to_physical(const SpectralVector<Scalar>& f) {
  return {backward_transform(f[0]), backward_transform(f[1])};
}

/// grad[j][i] = d_j f_i sampled on the grid.
template <typename Scalar>
std::array<std::array<Samples<Scalar>, 2>, 2> gradient_samples(const SpectralVector<Scalar>& f) {
  return {{{backward_transform(derivative(f[0], 0)), backward_transform(derivative(f[1], 0))},
           {backward_transform(derivative(f[0], 1)), backward_transform(derivative(f[1], 1))}}};
}

/// Forward transform of a pointwise product, truncated to the two-thirds band.
template <typename Scalar>
SpectralScalar<Scalar> to_spectral(const GridPtr& grid, const Samples<Scalar>& values) {
  auto out = forward_transform(grid, values);
  dealias_inplace(out);
  return out;
}

template <typename Scalar>
void zero_mean(SpectralScalar<Scalar>& f) {
  f(0, 0) = {};
}

template <typename Scalar>
void subtract_decay(SpectralVector<Scalar>& rhs, const SpectralVector<Scalar>& field, const RealArray<Scalar>& decay) {
  for (int i = 0; i < 2; ++i) rhs[i].coeffs.array() -= field[i].coeffs.array() * decay.array();
}

/// Physical-space samples shared by both equations.
template <typename Scalar>
struct PhysicalFields {
  std::array<Samples<Scalar>, 2> u, v, b;
  std::array<std::array<Samples<Scalar>, 2>, 2> grad_u, grad_v, grad_b;

  PhysicalFields(const SpectralVector<Scalar>& vs, const SpectralVector<Scalar>& us, const SpectralVector<Scalar>& bs,
                 bool need_grad_u)
      : u(to_physical(us)), v(to_physical(vs)), b(to_physical(bs)), grad_v(gradient_samples(vs)), grad_b(gradient_samples(bs)) {
    if (need_grad_u) grad_u = gradient_samples(us);
  }
};

/// -(u.grad)v - [sum_j v_j grad u_j] + (b.grad)b, projected.
template <typename Scalar>
SpectralVector<Scalar> momentum_terms(const PhysicalFields<Scalar>& p, const Model<Scalar>& model) {
  const bool transpose = has_transpose_term(model.config);
  SpectralVector<Scalar> out(model.grid);
  for (int i = 0; i < 2; ++i) {
    Samples<Scalar> acc = -(p.u[0].cwiseProduct(p.grad_v[0][i]) + p.u[1].cwiseProduct(p.grad_v[1][i]));
    if (transpose) acc -= p.v[0].cwiseProduct(p.grad_u[i][0]) + p.v[1].cwiseProduct(p.grad_u[i][1]);
    acc += p.b[0].cwiseProduct(p.grad_b[0][i]) + p.b[1].cwiseProduct(p.grad_b[1][i]);
    out[i] = to_spectral(model.grid, acc);
    zero_mean(out[i]);
  }
  return leray_project(std::move(out));
}

/// (b.grad)u - (u.grad)b.
template <typename Scalar>
SpectralVector<Scalar> induction_terms(const PhysicalFields<Scalar>& p, const SpectralVector<Scalar>& us,
                                       const Model<Scalar>& model) {
  // grad u is only sampled when the momentum equation needs it; the induction
  // term reuses it when present.
  const auto grad_u = p.grad_u[0][0].size() ? p.grad_u : gradient_samples(us);
  SpectralVector<Scalar> out(model.grid);
  for (int i = 0; i < 2; ++i) {
    Samples<Scalar> acc = p.b[0].cwiseProduct(grad_u[0][i]) + p.b[1].cwiseProduct(grad_u[1][i]);
    acc -= p.u[0].cwiseProduct(p.grad_b[0][i]) + p.u[1].cwiseProduct(p.grad_b[1][i]);
    out[i] = to_spectral(model.grid, acc);
    zero_mean(out[i]);
  }
  return out;
}

}  // namespace detail

/// Nonlinear tendencies of (v, b) for prognostic fields without a cached state.
/// Linear dissipation is excluded.
template <typename Scalar>
std::pair<SpectralVector<Scalar>, SpectralVector<Scalar>> nonlinear_terms(const SpectralVector<Scalar>& v,
                                                                         const SpectralVector<Scalar>& b,
                                                                         const Model<Scalar>& model) {
  const auto u = model.filtered_velocity(v);
  const detail::PhysicalFields<Scalar> p(v, u, b, true);
  return {detail::momentum_terms(p, model), detail::induction_terms(p, u, model)};
}

/// Tendency of v: P[-(u.grad)v - sum_j v_j grad u_j + (b.grad)b] (the transpose
/// term is absent for APPENDIX_A), optionally minus the dissipation.
template <typename Scalar>
SpectralVector<Scalar> rhs_velocity(const SimState<Scalar>& s, const Model<Scalar>& model, RhsOptions opt = {}) {
  require_fresh(s);
  const detail::PhysicalFields<Scalar> p(s.v, s.u, s.b, has_transpose_term(model.config));
  auto rhs = detail::momentum_terms(p, model);
  if (opt.include_dissipation) detail::subtract_decay(rhs, s.v, model.velocity_decay);
  return rhs;
}

/// Tendency of b in advective form (b.grad)u - (u.grad)b, optionally minus the dissipation.
template <typename Scalar>
SpectralVector<Scalar> rhs_magnetic(const SimState<Scalar>& s, const Model<Scalar>& model, RhsOptions opt = {}) {
  require_fresh(s);
  const detail::PhysicalFields<Scalar> p(s.v, s.u, s.b, true);
  auto rhs = detail::induction_terms(p, s.u, model);
  if (opt.include_dissipation) detail::subtract_decay(rhs, s.b, model.magnetic_decay);
  return rhs;
}

/// Tendency of b in divergence form: (div M)_i = d_j M_ji with M = b (x) u - u (x) b.
template <typename Scalar>
SpectralVector<Scalar> rhs_magnetic_divergence_form(const SimState<Scalar>& s, const Model<Scalar>& model) {
  require_fresh(s);
  const auto u = detail::to_physical(s.u);
  const auto b = detail::to_physical(s.b);
  SpectralVector<Scalar> out(model.grid);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto m_ji = detail::to_spectral(model.grid, RealArray<Scalar>(b[j].cwiseProduct(u[i]) - u[j].cwiseProduct(b[i])));
      out[i] += derivative(m_ji, j);
    }
    detail::zero_mean(out[i]);
  }
  return out;
}

/// Tendency of omega = curl v:
///   -(u.grad)omega + curl div(b (x) b)                    (GENERAL, THM1, THM2, THM3)
///   -(u.grad)omega + curl div(b (x) b) - curl_perp(u_i) . d_i v   (APPENDIX_A)
/// where curl_perp(u_i) . d_i v = d_1 u_i d_i v_2 - d_2 u_i d_i v_1 is what the
/// curl of -(u.grad)v leaves once the transpose term is absent.
template <typename Scalar>
SpectralScalar<Scalar> rhs_vorticity(const SimState<Scalar>& s, const Model<Scalar>& model, RhsOptions opt = {}) {
  require_fresh(s);
  const GridPtr& grid = model.grid;
  const auto u = detail::to_physical(s.u);
  const auto b = detail::to_physical(s.b);
  const auto w1 = backward_transform(derivative(s.omega, 0));
  const auto w2 = backward_transform(derivative(s.omega, 1));

  auto out = detail::to_spectral(grid, RealArray<Scalar>(-(u[0].cwiseProduct(w1) + u[1].cwiseProduct(w2))));

  // Lorentz force d_j (b_j b_i), then its scalar curl.
  const auto b11 = detail::to_spectral(grid, RealArray<Scalar>(b[0].cwiseProduct(b[0])));
  const auto b12 = detail::to_spectral(grid, RealArray<Scalar>(b[0].cwiseProduct(b[1])));
  const auto b22 = detail::to_spectral(grid, RealArray<Scalar>(b[1].cwiseProduct(b[1])));
  const auto f1 = derivative(b11, 0) + derivative(b12, 1);
  const auto f2 = derivative(b12, 0) + derivative(b22, 1);
  out += derivative(f2, 0) - derivative(f1, 1);

  if (!has_transpose_term(model.config)) {
    const auto grad_u = detail::gradient_samples(s.u);
    const auto grad_v = detail::gradient_samples(s.v);
    RealArray<Scalar> extra = RealArray<Scalar>::Zero(grid->n(), grid->n());
    for (int i = 0; i < 2; ++i) {
      extra += grad_u[0][i].cwiseProduct(grad_v[i][1]) - grad_u[1][i].cwiseProduct(grad_v[i][0]);
    }
    out -= detail::to_spectral(grid, extra);
  }
  detail::zero_mean(out);

  if (opt.include_dissipation) out.coeffs.array() -= s.omega.coeffs.array() * model.velocity_decay.array();
  return out;
}

/// Rate D in dE/dt = -2 D: <m_v v, u> + <m_b b, b> over the torus.
template <typename Scalar>
Scalar dissipation_rate(const SpectralVector<Scalar>& v, const SpectralVector<Scalar>& u, const SpectralVector<Scalar>& b,
                        const Model<Scalar>& model) {
  Scalar acc = 0;
  for (int i = 0; i < 2; ++i) {
    acc += (v[i].coeffs.array() * u[i].coeffs.array().conjugate()).real().cwiseProduct(model.velocity_decay.array()).sum();
    acc += b[i].coeffs.array().abs2().cwiseProduct(model.magnetic_decay.array()).sum();
  }
  return torus_area<Scalar>() * acc;
}

}  // namespace fmhd
