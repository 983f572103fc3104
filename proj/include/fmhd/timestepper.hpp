#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "fmhd/dynamics.hpp"

namespace fmhd {

enum class Scheme { if_rk4, if_rk2 };

inline std::string scheme_name(Scheme s);
inline Scheme parse_scheme(const std::string& name);

struct StepperConfig {
  Scheme scheme = Scheme::if_rk4;
  double dt = 1e-3;
  double cfl_target = 0.5;
  double t_end = 1.0;
  bool adaptive = false;
  /// Steps between CFL re-evaluations when adaptive.
  int adapt_every = 10;
  /// Vorticity sup-norm treated as blow-up.
  double blowup_ceiling = 1e8;
  /// Drop the nonlinear terms (pure semigroup evolution).
  bool linear_only = false;
};

/// Step index, time and accumulated 2 * int D dt handed to a diagnostics sink.
struct StepData {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  /// 2 * int_0^t D(s) ds, integrated with the stepper's own quadrature weights.
  double dissipation_integral = 0.0;
};

template <typename Scalar>
struct RunReport {
  SimState<Scalar> final_state;
  long steps = 0;
  double wall_seconds = 0.0;
  bool blowup = false;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
  std::string blowup_reason;
  double dissipation_integral = 0.0;
};

/// Largest max|u| + max|b| on the grid.
template <typename Scalar>
Scalar transport_speed(const SimState<Scalar>& s) {
  const auto pointwise_max = [](const SpectralVector<Scalar>& f) {
    const auto a = backward_transform(f[0]);
    const auto b = backward_transform(f[1]);
    return (a.array().square() + b.array().square()).sqrt().maxCoeff();
  };
  return pointwise_max(s.u) + pointwise_max(s.b);
}

/// dt allowed by cfl * h / (max|u| + max|b| + 1e-8).
template <typename Scalar>
double cfl_limit(const SimState<Scalar>& s, double cfl_target) {
  return cfl_target * s.grid()->spacing() / (static_cast<double>(transport_speed(s)) + 1e-8);
}

/// Integrating-factor Runge-Kutta integrator. Each mode of v and b evolves as
/// d/dt (exp(m t) w) = exp(m t) N(w), so the linear dissipation is exact.
template <typename Scalar = double>
class Stepper {
 public:
  Stepper(const Model<Scalar>& model, StepperConfig config)
      : model_(model),
        config_(std::move(config)),
        mv_(wide_symbol(dissipation_symbol(model.config, Equation::velocity), *model.grid)),
        mb_(wide_symbol(dissipation_symbol(model.config, Equation::magnetic), *model.grid)) {}

  const StepperConfig& config() const { return config_; }

  /// Advances by h. Returns the step's contribution to 2 * int D dt.
  double advance(SimState<Scalar>& s, double h) {
    require_fresh(s);
    prepare(h);
    double q = 0.0;
    if (config_.linear_only) {
      q = h * static_cast<double>(rate(s.v, s.b)) * 2.0;
      s.v = decay(s.v, ev_full_);
      s.b = decay(s.b, eb_full_);
    } else if (config_.scheme == Scheme::if_rk4) {
      q = rk4(s, h);
    } else {
      q = rk2(s, h);
    }
    enforce_hermitian(s.v);
    enforce_hermitian(s.b);
    s.v = dealias(std::move(s.v));
    s.b = dealias(std::move(s.b));
    refresh(s, model_);
    return q;
  }

 private:
  using Vec = SpectralVector<Scalar>;

  /// exp(-m t) split as hi + lo, both in Scalar, so that the rounding of the
  /// factor does not accumulate with the same sign over many steps.
  struct Factor {
    RealArray<Scalar> hi, lo;
  };

  using Wide = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;

  static std::vector<Wide> wide_symbol(const SymbolSpec& spec, const Grid& grid) {
    std::vector<Wide> out(grid.k_squared().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = spec.at<Wide>(grid.k_squared()[i]);
    return out;
  }

  Factor exp_factor(const std::vector<Wide>& m, double t) const {
    const int n = model_.grid->n();
    Factor f{RealArray<Scalar>(n, n), RealArray<Scalar>(n, n)};
    for (std::size_t i = 0; i < m.size(); ++i) {
      using std::exp;
      const Wide e = exp(-m[i] * static_cast<Wide>(t));
      f.hi.data()[i] = static_cast<Scalar>(e);
      f.lo.data()[i] = static_cast<Scalar>(e - static_cast<Wide>(f.hi.data()[i]));
    }
    return f;
  }

  void prepare(double h) {
    if (h == prepared_dt_) return;
    ev_full_ = exp_factor(mv_, h);
    ev_half_ = exp_factor(mv_, h / 2);
    eb_full_ = exp_factor(mb_, h);
    eb_half_ = exp_factor(mb_, h / 2);
    prepared_dt_ = h;
  }

  static Vec decay(Vec f, const Factor& factor) {
    const Scalar* hi = factor.hi.data();
    const Scalar* lo = factor.lo.data();
    for (int i = 0; i < 2; ++i) {
      auto* c = f[i].coeffs.data();
      for (Eigen::Index m = 0; m < f[i].coeffs.size(); ++m) {
        const Scalar re = c[m].real(), im = c[m].imag();
        c[m] = {std::fma(re, hi[m], re * lo[m]), std::fma(im, hi[m], im * lo[m])};
      }
    }
    return f;
  }

  Scalar rate(const Vec& v, const Vec& b) const {
    return dissipation_rate(v, model_.filtered_velocity(v), b, model_);
  }

  // Classical RK4 in integrating-factor variables; the dissipation integral is
  // advanced as an extra unknown with the same weights.
  double rk4(SimState<Scalar>& s, double h) {
    const Scalar hs = static_cast<Scalar>(h);
    const Scalar half = hs / 2;
    const auto [kv1, kb1] = nonlinear_terms(s.v, s.b, model_);
    const Scalar d1 = rate(s.v, s.b);

    Vec va = decay(s.v + half * kv1, ev_half_);
    Vec ba = decay(s.b + half * kb1, eb_half_);
    const auto [kv2, kb2] = nonlinear_terms(va, ba, model_);
    const Scalar d2 = rate(va, ba);

    const Vec v_half = decay(s.v, ev_half_);
    const Vec b_half = decay(s.b, eb_half_);
    Vec vb = v_half + half * kv2;
    Vec bb = b_half + half * kb2;
    const auto [kv3, kb3] = nonlinear_terms(vb, bb, model_);
    const Scalar d3 = rate(vb, bb);

    const Vec v_full = decay(s.v, ev_full_);
    const Vec b_full = decay(s.b, eb_full_);
    Vec vc = v_full + hs * decay(kv3, ev_half_);
    Vec bc = b_full + hs * decay(kb3, eb_half_);
    const auto [kv4, kb4] = nonlinear_terms(vc, bc, model_);
    const Scalar d4 = rate(vc, bc);

    const Scalar w = hs / 6;
    s.v = v_full + w * (decay(kv1, ev_full_) + Scalar(2) * decay(kv2 + kv3, ev_half_) + kv4);
    s.b = b_full + w * (decay(kb1, eb_full_) + Scalar(2) * decay(kb2 + kb3, eb_half_) + kb4);
    return static_cast<double>(w * Scalar(2) * (d1 + Scalar(2) * d2 + Scalar(2) * d3 + d4));
  }

  // Heun's method in integrating-factor variables.
  double rk2(SimState<Scalar>& s, double h) {
    const Scalar hs = static_cast<Scalar>(h);
    const auto [kv1, kb1] = nonlinear_terms(s.v, s.b, model_);
    const Scalar d1 = rate(s.v, s.b);
    Vec vc = decay(s.v + hs * kv1, ev_full_);
    Vec bc = decay(s.b + hs * kb1, eb_full_);
    const auto [kv2, kb2] = nonlinear_terms(vc, bc, model_);
    const Scalar d2 = rate(vc, bc);
    const Scalar w = hs / 2;
    s.v = decay(s.v, ev_full_) + w * (decay(kv1, ev_full_) + kv2);
    s.b = decay(s.b, eb_full_) + w * (decay(kb1, eb_full_) + kb2);
    return static_cast<double>(w * Scalar(2) * (d1 + d2));
  }

  const Model<Scalar>& model_;
  StepperConfig config_;
  std::vector<Wide> mv_, mb_;
  double prepared_dt_ = std::numeric_limits<double>::quiet_NaN();
  Factor ev_full_, ev_half_, eb_full_, eb_half_;
};

/// Single step of size sc.dt; throws BlowUpError on non-finite coefficients.
template <typename Scalar>
SimState<Scalar> step(SimState<Scalar> s, const Model<Scalar>& model, const StepperConfig& sc) {
  Stepper<Scalar> stepper(model, sc);
  stepper.advance(s, sc.dt);
  s.t += sc.dt;
  if (!s.v[0].coeffs.allFinite() || !s.v[1].coeffs.allFinite() || !s.b[0].coeffs.allFinite() ||
      !s.b[1].coeffs.allFinite()) {
    throw BlowUpError("non-finite coefficients after step", s.t);
  }
  return s;
}

template <typename Scalar>
using DiagnosticSink = std::function<void(const SimState<Scalar>&, const StepData&)>;

/// Steps from initial.t to sc.t_end, calling `sink` at the start, every
/// `diagnostics_every` steps, and at the end. Blow-up halts the run and is
/// reported rather than thrown.
template <typename Scalar>
RunReport<Scalar> run(const SimState<Scalar>& initial, const Model<Scalar>& model, const StepperConfig& sc,
                      const DiagnosticSink<Scalar>& sink = {}, long diagnostics_every = 1) {
  const auto wall_start = std::chrono::steady_clock::now();
  if (!(sc.t_end >= initial.t)) throw ConfigError("t_end must not precede the initial time");
  if (!(sc.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(sc.cfl_target > 0.0 && sc.cfl_target < 1.0)) throw ConfigError("cfl_target must lie in (0, 1)");
  if (diagnostics_every < 1) throw ConfigError("diagnostics interval must be >= 1");

  RunReport<Scalar> report;
  report.final_state = initial;
  require_fresh(report.final_state);
  SimState<Scalar>& s = report.final_state;

  if (!sc.adaptive && !sc.linear_only) {
    const double limit = cfl_limit(s, sc.cfl_target);
    if (sc.dt > limit) {
      throw ConfigError("dt = " + std::to_string(sc.dt) + " violates the CFL bound " + std::to_string(limit));
    }
  }

  const double t0 = s.t;
  const double span = sc.t_end - t0;
  StepData data{0, t0, sc.dt, 0.0};
  if (sink) sink(s, data);
  if (span == 0.0) {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
    return report;
  }

  // Fixed steps land exactly on t_end: use dt when it divides the span,
  // otherwise the nearest smaller uniform step.
  long fixed_steps = 0;
  double fixed_dt = sc.dt;
  if (!sc.adaptive) {
    const double ratio = span / sc.dt;
    const double nearest = std::round(ratio);
    if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
      fixed_steps = static_cast<long>(nearest);
    } else {
      fixed_steps = static_cast<long>(std::ceil(ratio));
      fixed_dt = span / static_cast<double>(fixed_steps);
    }
  }

  Stepper<Scalar> stepper(model, sc);
  double dt = sc.dt;
  const auto check = [&](const char*& reason) {
    for (const auto* f : {&s.v[0], &s.v[1], &s.b[0], &s.b[1]})
      if (!f->coeffs.allFinite()) {
        reason = "non-finite coefficients";
        return false;
      }
    const auto w = backward_transform(s.omega);
    if (w.cwiseAbs().maxCoeff() > static_cast<Scalar>(sc.blowup_ceiling)) {
      reason = "vorticity sup-norm exceeded the blow-up ceiling";
      return false;
    }
    return true;
  };

  while (true) {
    double h;
    if (sc.adaptive) {
      if (s.t >= sc.t_end) break;
      if (data.step % sc.adapt_every == 0) dt = std::min(sc.dt, cfl_limit(s, sc.cfl_target));
      h = std::min(dt, sc.t_end - s.t);
    } else {
      if (data.step >= fixed_steps) break;
      h = fixed_dt;
    }
    data.dissipation_integral += stepper.advance(s, h);
    ++data.step;
    s.t = sc.adaptive ? ((sc.t_end - s.t <= h) ? sc.t_end : s.t + h)
                      : (data.step == fixed_steps ? sc.t_end : t0 + static_cast<double>(data.step) * fixed_dt);
    data.t = s.t;
    data.dt = h;

    const char* reason = nullptr;
    if (!check(reason)) {
      report.blowup = true;
      report.blowup_time = s.t;
      report.blowup_reason = reason;
      if (sink) sink(s, data);
      break;
    }
    const bool last = sc.adaptive ? s.t >= sc.t_end : data.step == fixed_steps;
    if (sink && (data.step % diagnostics_every == 0 || last)) sink(s, data);
  }

  report.steps = data.step;
  report.dissipation_integral = data.dissipation_integral;
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return report;
}

inline std::string scheme_name(Scheme s) { return s == Scheme::if_rk4 ? "IF-RK4" : "IF-RK2"; }

inline Scheme parse_scheme(const std::string& name) {
  if (name == "IF-RK4") return Scheme::if_rk4;
  if (name == "IF-RK2") return Scheme::if_rk2;
  throw ConfigError("unknown time-stepping scheme '" + name + "'");
}

}  // namespace fmhd
