#pragma once

#include <algorithm>
#include <cmath>

#include "fmhd/errors.hpp"
#include "fmhd/field.hpp"
#include "fmhd/symbol.hpp"
#include "fmhd/system.hpp"
#include "fmhd/vector_ops.hpp"

namespace fmhd {

/// A system configuration bound to a grid, with every multiplier table the
/// dynamics needs evaluated once.
template <typename Scalar = double>
struct Model {
  GridPtr grid;
  SystemConfig config;
  RealArray<Scalar> filter;          // v = filter * u
  RealArray<Scalar> velocity_decay;  // linear dissipation symbol of the v-equation
  RealArray<Scalar> magnetic_decay;  // linear dissipation symbol of the b-equation

  Model(GridPtr g, SystemConfig cfg)
      : grid(std::move(g)),
        config(std::move(cfg)),
        filter(eval_symbol<Scalar>(filter_symbol(config), *grid)),
        velocity_decay(eval_symbol<Scalar>(dissipation_symbol(config, Equation::velocity), *grid)),
        magnetic_decay(eval_symbol<Scalar>(dissipation_symbol(config, Equation::magnetic), *grid)) {}

  SpectralVector<Scalar> filtered_velocity(const SpectralVector<Scalar>& v) const {
    return divide_by_symbol(v, filter);
  }
};

/// Prognostic pair (v, b) at time t with cached u = filter^-1 v and omega = curl v.
template <typename Scalar = double>
struct SimState {
  SpectralVector<Scalar> v;
  SpectralVector<Scalar> b;
  double t = 0.0;
  SpectralVector<Scalar> u;
  SpectralScalar<Scalar> omega;
  /// Cleared by anyone who edits v or b without calling refresh().
  bool fresh = false;

  const GridPtr& grid() const { return v.grid(); }
};

template <typename Scalar>
void refresh(SimState<Scalar>& s, const Model<Scalar>& model) {
  s.u = model.filtered_velocity(s.v);
  s.omega = vorticity_of(s.v);
  s.fresh = true;
}

template <typename Scalar>
SimState<Scalar> make_state(SpectralVector<Scalar> v, SpectralVector<Scalar> b, double t, const Model<Scalar>& model) {
  if (v.n() != model.grid->n() || b.n() != model.grid->n()) throw DimensionError("state fields do not match model grid");
  SimState<Scalar> s;
  s.v = std::move(v);
  s.b = std::move(b);
  s.t = t;
  refresh(s, model);
  return s;
}

/// Relative mismatch between the cache and fields re-derived from v.
template <typename Scalar>
Scalar cache_mismatch(const SimState<Scalar>& s, const Model<Scalar>& model) {
  const auto u = model.filtered_velocity(s.v);
  const auto w = vorticity_of(s.v);
  const auto rel = [](const CoeffArray<Scalar>& a, const CoeffArray<Scalar>& b) {
    const Scalar scale = std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
    return scale == Scalar(0) ? Scalar(0) : (a - b).cwiseAbs().maxCoeff() / scale;
  };
  return std::max({rel(u[0].coeffs, s.u[0].coeffs), rel(u[1].coeffs, s.u[1].coeffs), rel(w.coeffs, s.omega.coeffs)});
}

template <typename Scalar>
void require_fresh(const SimState<Scalar>& s) {
  if (!s.fresh || s.u[0].grid == nullptr) throw StaleCacheError("state cache is stale; call refresh() after editing v or b");
}

}  // namespace fmhd
