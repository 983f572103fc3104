#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fmhd/diagnostics.hpp"
#include "fmhd/harness/config.hpp"

namespace fmhd {

struct RunOptions {
  /// Write timeseries.csv, summary.txt, config.txt and final.ckpt under the
  /// spec's output directory.
  bool write_outputs = true;
  /// Progress and covered-regime messages; null for silence.
  std::ostream* log = nullptr;
};

/// Scalar digest of a run, also written as summary.txt.
struct RunSummary {
  std::string variant;
  double alpha = 0.0, beta = 0.0, gamma = 0.0;
  std::string g;
  bool covered = false;
  bool completed = false;
  bool blowup = false;
  double blowup_time = 0.0;
  std::string blowup_reason;
  double final_time = 0.0;
  long steps = 0;
  double wall_seconds = 0.0;
  double peak_omega_linf = 0.0;
  std::vector<double> exponents;
  std::vector<double> peak_omega_sobolev;
  std::vector<double> peak_b_sobolev;
  /// Largest rise of the energy between records, relative to the initial energy.
  double max_energy_rise = 0.0;
  /// Balance between the first and last record.
  double energy_balance = 0.0;
  double max_cancellation_residual = 0.0;
};

struct RunOutcome {
  RunSummary summary;
  std::vector<DiagnosticsRecord> records;
  SimState<double> final_state;
};

RunOutcome run_simulation(const RunSpec& spec, const RunOptions& options = {});

/// Continues a checkpointed run to t_end. Without a config the run settings
/// are defaults and the system comes from the checkpoint header.
RunOutcome resume_simulation(const std::filesystem::path& checkpoint, double t_end,
                             const std::optional<std::filesystem::path>& config,
                             const std::optional<std::filesystem::path>& output_dir, const RunOptions& options = {});

void write_summary(const RunSummary& s, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Sweeps

struct SweepAxis {
  std::string name;
  std::vector<double> values;
};

/// "beta=0.6:1.0:0.1" (inclusive range) or "beta=0.6,0.8,1.0" (explicit list).
SweepAxis parse_axis(const std::string& text);

struct SweepCell {
  std::vector<std::pair<std::string, double>> parameters;
  std::filesystem::path directory;
  /// completed, blowup or error.
  std::string status;
  std::string error;
  std::optional<RunSummary> summary;
};

/// Thread count from FMHD_THREADS, else the hardware concurrency.
unsigned sweep_threads();

/// One independent run per point of the Cartesian product of the axes, each in
/// its own subdirectory of base.output_dir. Failing cells are recorded and the
/// sweep continues. Writes sweep_summary.csv.
std::vector<SweepCell> sweep(const RunSpec& base, const std::vector<SweepAxis>& axes, const RunOptions& options = {},
                             unsigned threads = 0);

/// Aggregates every timeseries.csv below dir into one table (also written to
/// dir/report.csv) and returns it as text.
std::string report_directory(const std::filesystem::path& dir);

}  // namespace fmhd
