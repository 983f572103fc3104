#pragma once

#include <cstdint>
#include <utility>

#include "fmhd/harness/config.hpp"
#include "fmhd/model.hpp"

namespace fmhd {

using FieldPair = std::pair<SpectralVector<double>, SpectralVector<double>>;

/// v0 = A(-sin x2, sin x1), b0 = A(-sin(x2 + pi/4), sin(x1 + pi/4)).
FieldPair taylor_green_mhd(const GridPtr& grid, double amplitude);

/// v0 = A(-sin x2, sin x1), b0 = A(-sin x2, sin 2 x1).
FieldPair orszag_tang_like(const GridPtr& grid, double amplitude);

/// Solenoidal v0 and b0 built from random stream functions with Gaussian
/// amplitudes on the shell k_min <= |k| <= k_max, each scaled to root-mean-square
/// speed A. Bit-reproducible for a given seed on one platform.
FieldPair random_band(const GridPtr& grid, std::uint64_t seed, int k_min, int k_max, double amplitude);

/// Initial state for a run spec; the checkpoint variant also restores the time.
SimState<double> make_initial_data(const RunSpec& spec, const Model<double>& model);

/// Projects, dealiases and symmetrizes a velocity or magnetic field.
SpectralVector<double> sanitize(SpectralVector<double> f);

}  // namespace fmhd
