#include "fmhd/harness/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fmhd/diagnostics.hpp"
#include "fmhd/harness/initial_data.hpp"
#include "fmhd/harness/io.hpp"

namespace fmhd {
namespace {

std::string sci(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

CheckResult bound_check(std::string name, double value, double tol) {
  return {std::move(name), value <= tol, "max " + sci(value) + " (tol " + sci(tol) + ")"};
}

double rel_diff(const SpectralScalar<double>& a, const SpectralScalar<double>& b) {
  const double scale = std::max(a.coeffs.cwiseAbs().maxCoeff(), b.coeffs.cwiseAbs().maxCoeff());
  return scale == 0.0 ? 0.0 : (a.coeffs - b.coeffs).cwiseAbs().maxCoeff() / scale;
}

}  // namespace

std::vector<CheckResult> run_identity_suite(const RunSpec& spec, std::uint64_t seed) {
  const int n = std::min(spec.grid_n, 128);
  const auto grid = make_grid(n);
  const Model<double> model(grid, spec.system);
  const int kmax = std::min(8, grid->dealias_cutoff());
  constexpr int samples = 5;

  std::vector<SimState<double>> states;
  for (int i = 0; i < samples; ++i) {
    auto [v, b] = random_band(grid, seed + static_cast<std::uint64_t>(i), 1, kmax, 1.0);
    states.push_back(make_state(std::move(v), std::move(b), 0.0, model));
  }
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto x = backward_transform(s.v[0]);
      const double quad = x.squaredNorm() / static_cast<double>(x.size());
      const double coef = mean_product(s.v[0], s.v[0]);
      worst = std::max(worst, std::abs(quad - coef) / coef);
    }
    out.push_back(bound_check("parseval", worst, 1e-12));
  }
  {
    // Filter eigenvalue on single modes.
    double worst = 0.0;
    const auto table = eval_symbol<double>(filter_symbol(spec.system), *grid);
    for (int k1 = 1; k1 <= kmax; k1 += 3)
      for (int k2 = 0; k2 <= kmax; k2 += 2) {
        SpectralScalar<double> f(grid);
        f(k1, k2) = {0.5, 0.0};
        f(grid->mirror(k1), grid->mirror(k2)) = {0.5, 0.0};
        const auto g = apply_multiplier(f, table);
        const double expect = filter_symbol(spec.system).at<double>(static_cast<long>(k1) * k1 + static_cast<long>(k2) * k2);
        worst = std::max(worst, std::abs(g(k1, k2).real() / 0.5 - expect) / expect);
      }
    out.push_back(bound_check("filter_eigenvalue", worst, 1e-15));
  }
  {
    double worst = 0.0;
    for (const auto& s : states) {
      const double e = energy(s, model);
      const double quad = inner(s.u, s.v) + inner(s.b, s.b);
      worst = std::max(worst, std::abs(e - quad) / e);
    }
    out.push_back(bound_check("energy_filter_identity", worst, 1e-13));
  }
  {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto r = cancellation_residuals(s);
      worst = std::max({worst, r.lorentz, r.transport, r.helmholtz, laplacian_transport_residual(s.u)});
    }
    out.push_back(bound_check("cancellation_residuals", worst, 1e-12));
  }
  {
    double worst = 0.0;
    for (const auto& s : states)
      worst = std::max(worst, rel_diff(rhs_vorticity(s, model), vorticity_of(rhs_velocity(s, model))));
    out.push_back(bound_check("curl_consistency", worst, 1e-11));
  }
  {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto a = rhs_magnetic(s, model);
      const auto b = rhs_magnetic_divergence_form(s, model);
      worst = std::max({worst, rel_diff(a[0], b[0]), rel_diff(a[1], b[1])});
    }
    out.push_back(bound_check("induction_forms_agree", worst, 1e-11));
  }
  {
    double worst = 0.0;
    for (const auto& s : states) {
      const auto blocks = lp_decompose(s.omega);
      worst = std::max(worst, l2_norm(lp_reconstruct(blocks) - s.omega) / l2_norm(s.omega));
    }
    out.push_back(bound_check("lp_reconstruction", worst, 1e-12));
  }
  {
    StepperConfig sc = spec.stepper;
    sc.dt = std::min({sc.dt, 0.05 * cfl_limit(states[0], 1.0), 1e-3});
    sc.adaptive = false;
    sc.linear_only = false;
    sc.t_end = 10 * sc.dt;
    long seq = 0;
    std::vector<DiagnosticsRecord> recs;
    const std::vector<double> none;
    const auto report = run<double>(states[0], model, sc, [&](const SimState<double>& s, const StepData& d) {
      recs.push_back(make_record(s, model, d, none, seq++));
    });
    const double drift = energy_balance_drift(std::span<const DiagnosticsRecord>(recs));
    out.push_back(bound_check("energy_balance_10_steps", drift, 1e-8));
    const double div = std::max(divergence_defect(report.final_state.v), divergence_defect(report.final_state.b));
    out.push_back(bound_check("solenoidal_after_steps", div, 1e-12));
  }
  {
    StepperConfig sc = spec.stepper;
    sc.linear_only = true;
    sc.adaptive = false;
    sc.dt = 1e-2;
    sc.t_end = 0.1;
    const auto& s0 = states[1];
    const auto report = run<double>(s0, model, sc);
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
      const auto expect_v = apply_multiplier(s0.v[i], RealArray<double>((-model.velocity_decay.array() * 0.1).exp()));
      const auto expect_b = apply_multiplier(s0.b[i], RealArray<double>((-model.magnetic_decay.array() * 0.1).exp()));
      worst = std::max({worst, rel_diff(report.final_state.v[i], expect_v), rel_diff(report.final_state.b[i], expect_b)});
    }
    out.push_back(bound_check("semigroup_exactness", worst, 1e-13));
  }
  {
    std::stringstream buf;
    write_checkpoint(buf, states[2], spec.system);
    const auto ck = read_checkpoint(buf);
    bool same = ck.header.time == states[2].t;
    for (int i = 0; i < 2; ++i)
      same = same && ck.v[i].coeffs == states[2].v[i].coeffs && ck.b[i].coeffs == states[2].b[i].coeffs;
    out.push_back({"checkpoint_roundtrip", same, same ? "bit-identical" : "coefficients differ"});
  }
  return out;
}

}  // namespace fmhd
