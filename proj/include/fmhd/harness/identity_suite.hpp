#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fmhd/harness/config.hpp"

namespace fmhd {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Exact identities and properties of the configured system, evaluated on
/// seeded random states at the config's grid size (capped at 128).
std::vector<CheckResult> run_identity_suite(const RunSpec& spec, std::uint64_t seed = 20240601);

}  // namespace fmhd
