#pragma once

#include <stdexcept>
#include <string>

namespace fmhd {

/// Invalid grid sizes, malformed configs, violated theorem conditions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sample count or grid size mismatch between operands.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameter outside the mathematical domain of an operator (negative exponent, g < 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Cached derived fields no longer match the prognostic fields.
class StaleCacheError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Non-finite values or runaway vorticity during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Checkpoint I/O: bad magic, version mismatch, truncation, grid mismatch.
class CheckpointError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fmhd
