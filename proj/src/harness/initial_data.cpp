#include "fmhd/harness/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "fmhd/harness/io.hpp"

namespace fmhd {

SpectralVector<double> sanitize(SpectralVector<double> f) {
  f = leray_project(dealias(std::move(f)));
  enforce_hermitian(f);
  f[0](0, 0) = {};
  f[1](0, 0) = {};
  return f;
}

FieldPair taylor_green_mhd(const GridPtr& grid, double amplitude) {
  const double phase = std::numbers::pi / 4.0;
  auto v = forward_transform(grid, sample(*grid, [&](double, double x2) { return -amplitude * std::sin(x2); }),
                             sample(*grid, [&](double x1, double) { return amplitude * std::sin(x1); }));
  auto b = forward_transform(grid, sample(*grid, [&](double, double x2) { return -amplitude * std::sin(x2 + phase); }),
                             sample(*grid, [&](double x1, double) { return amplitude * std::sin(x1 + phase); }));
  return {sanitize(std::move(v)), sanitize(std::move(b))};
}

FieldPair orszag_tang_like(const GridPtr& grid, double amplitude) {
  auto v = forward_transform(grid, sample(*grid, [&](double, double x2) { return -amplitude * std::sin(x2); }),
                             sample(*grid, [&](double x1, double) { return amplitude * std::sin(x1); }));
  auto b = forward_transform(grid, sample(*grid, [&](double, double x2) { return -amplitude * std::sin(x2); }),
                             sample(*grid, [&](double x1, double) { return amplitude * std::sin(2.0 * x1); }));
  return {sanitize(std::move(v)), sanitize(std::move(b))};
}

namespace {

SpectralVector<double> random_solenoidal(const GridPtr& grid, std::mt19937_64& rng, int k_min, int k_max,
                                         double amplitude) {
  std::normal_distribution<double> normal;
  SpectralScalar<double> psi(grid);
  const auto& k2 = grid->k_squared();
  const long lo = static_cast<long>(k_min) * k_min, hi = static_cast<long>(k_max) * k_max;
  const int n = grid->n();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const long m = k2[static_cast<std::size_t>(r) * n + c];
      if (m < lo || m > hi || !grid->in_dealias_band(r, c)) continue;
      const double re = normal(rng);
      const double im = normal(rng);
      psi(r, c) = {re, im};
    }
  enforce_hermitian(psi);
  auto v = sanitize(perp_gradient(psi));
  const double rms = l2_norm(v) / (2.0 * std::numbers::pi);
  if (rms > 0.0) v *= amplitude / rms;
  return v;
}

}  // namespace

FieldPair random_band(const GridPtr& grid, std::uint64_t seed, int k_min, int k_max, double amplitude) {
  if (k_min < 1 || k_max < k_min) throw ConfigError("random_band needs 1 <= k_min <= k_max");
  if (k_max > grid->dealias_cutoff())
    throw ConfigError("random_band k_max = " + std::to_string(k_max) + " exceeds the dealiasing cutoff " +
                      std::to_string(grid->dealias_cutoff()));
  std::mt19937_64 rng(seed);
  auto v = random_solenoidal(grid, rng, k_min, k_max, amplitude);
  auto b = random_solenoidal(grid, rng, k_min, k_max, amplitude);
  return {std::move(v), std::move(b)};
}

SimState<double> make_initial_data(const RunSpec& spec, const Model<double>& model) {
  const auto& grid = model.grid;
  const auto& in = spec.initial;
  switch (in.kind) {
    case InitialKind::taylor_green_mhd: {
      auto [v, b] = taylor_green_mhd(grid, in.amplitude);
      return make_state(std::move(v), std::move(b), 0.0, model);
    }
    case InitialKind::orszag_tang_like: {
      auto [v, b] = orszag_tang_like(grid, in.amplitude);
      return make_state(std::move(v), std::move(b), 0.0, model);
    }
    case InitialKind::random_band: {
      auto [v, b] = random_band(grid, in.seed, in.k_min, in.k_max, in.amplitude);
      return make_state(std::move(v), std::move(b), 0.0, model);
    }
    case InitialKind::from_checkpoint: {
      auto ck = read_checkpoint(in.path);
      if (ck.header.n != grid->n())
        throw CheckpointError("checkpoint grid n = " + std::to_string(ck.header.n) + " does not match grid.n = " +
                              std::to_string(grid->n()));
      SpectralVector<double> v(grid), b(grid);
      for (int i = 0; i < 2; ++i) {
        v[i].coeffs = std::move(ck.v[i].coeffs);
        b[i].coeffs = std::move(ck.b[i].coeffs);
      }
      return make_state(std::move(v), std::move(b), ck.header.time, model);
    }
  }
  throw ConfigError("unsupported initial data kind");
}

}  // namespace fmhd
