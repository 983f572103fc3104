#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fmhd/diagnostics.hpp"
#include "fmhd/system.hpp"

namespace fmhd {

// ---------------------------------------------------------------------------
// Time series

/// Column names in output order:
///   t, energy, dissipation,
///   for each monitored s: u_H<s>, v_H<s>, b_H<s>, omega_H<s>,
///   b_linf, omega_linf, grad_b_linf, grad_u_linf,
///   r1, r2, r3, V, H,
///   magnetic_dissipation, dissipation_integral, step
std::vector<std::string> timeseries_columns(const std::vector<double>& exponents);

/// Appends one CSV row per record, 17 significant digits. Undefined V or H are
/// written as empty fields.
class TimeseriesWriter {
 public:
  TimeseriesWriter(const std::filesystem::path& path, std::vector<double> exponents);
  void write(const DiagnosticsRecord& r);

 private:
  std::ofstream out_;
  std::vector<double> exponents_;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // empty fields read as NaN

  std::optional<std::size_t> column(const std::string& name) const;
};

Table read_csv(const std::filesystem::path& path);

std::string format_real(double x);

// ---------------------------------------------------------------------------
// Checkpoints
//
// Layout (little-endian):
//   char[4] "FMHD", u32 version, u32 n, u32 variant, f64 alpha, f64 beta,
//   f64 gamma, u32 g family id, f64 time,
//   then v1, v2, b1, b2: n*n modes each in row-major FFT order, every mode a
//   (re, im) pair of f64.

inline constexpr std::uint32_t checkpoint_version = 1;

struct CheckpointHeader {
  std::uint32_t version = checkpoint_version;
  int n = 0;
  SystemVariant variant = SystemVariant::general;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  GFamily g = GFamily::const1;
  double time = 0.0;
};

struct Checkpoint {
  CheckpointHeader header;
  SpectralVector<double> v, b;
};

void write_checkpoint(std::ostream& out, const SimState<double>& s, const SystemConfig& config);
void write_checkpoint(const std::filesystem::path& path, const SimState<double>& s, const SystemConfig& config);
Checkpoint read_checkpoint(std::istream& in);
Checkpoint read_checkpoint(const std::filesystem::path& path);

/// System described by a header. custom_table weights are not stored in the
/// file, so they must come from `fallback` (a config for the same system).
SystemConfig system_from_header(const CheckpointHeader& h, const std::optional<SystemConfig>& fallback = std::nullopt);

}  // namespace fmhd
