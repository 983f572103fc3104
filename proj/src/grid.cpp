#include "fmhd/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fmhd/errors.hpp"

namespace fmhd {

Grid::Grid(int n) : n_(n) {
  if (n % 2 != 0 || n < 16 || n > 4096) {
    throw ConfigError("grid size must be even and in [16, 4096], got " + std::to_string(n));
  }
  const auto total = static_cast<std::size_t>(n) * n;
  k2_.resize(total);
  knorm_.resize(total);
  mask_.resize(total);
  const int cutoff = dealias_cutoff();
  for (int r = 0; r < n; ++r) {
    const long k1 = wavenumber(r);
    for (int c = 0; c < n; ++c) {
      const long k2 = wavenumber(c);
      const auto idx = static_cast<std::size_t>(r) * n + c;
      k2_[idx] = k1 * k1 + k2 * k2;
      knorm_[idx] = std::sqrt(static_cast<double>(k2_[idx]));
      mask_[idx] = (std::abs(k1) <= cutoff && std::abs(k2) <= cutoff) ? 1 : 0;
    }
  }
}

double Grid::length() const noexcept { return 2.0 * std::numbers::pi; }

GridPtr make_grid(int n) { return std::make_shared<const Grid>(n); }

}  // namespace fmhd
