#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fmhd/system.hpp"
#include "fmhd/timestepper.hpp"

namespace fmhd {

enum class InitialKind { taylor_green_mhd, random_band, orszag_tang_like, from_checkpoint };

std::string initial_kind_name(InitialKind k);
InitialKind parse_initial_kind(const std::string& name);

struct InitialSpec {
  InitialKind kind = InitialKind::taylor_green_mhd;
  double amplitude = 1.0;
  std::uint64_t seed = 1;
  int k_min = 1;
  int k_max = 4;
  std::filesystem::path path;  // from_checkpoint
};

/// A fully resolved run description.
struct RunSpec {
  SystemConfig system;
  StepperConfig stepper;
  int grid_n = 128;
  InitialSpec initial;
  long diagnostics_every = 10;
  std::filesystem::path output_dir = "fmhd_out";
  std::vector<double> sobolev_exponents;
  /// Write final.ckpt next to the time series.
  bool write_checkpoint = true;
};

/// Exponents monitored when the config does not list them: the Sobolev levels
/// the a priori estimates of each variant control.
std::vector<double> default_sobolev_exponents(const SystemConfig& system);

/// Parses flat `section.key = value` text ('#' starts a comment). Unknown or
/// repeated keys, malformed values and violated variant conditions throw
/// ConfigError. Relative paths are resolved against `base_dir`.
RunSpec parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunSpec load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(dump_config(s)) reproduces s.
std::string dump_config(const RunSpec& spec);

/// Parameters a config or sweep axis may set on the system.
void set_system_parameter(RunSpec& spec, const std::string& name, double value);

}  // namespace fmhd
