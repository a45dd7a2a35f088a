#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asyncadd {

enum class ErrorCode {
  MultipleDrivers,
  ArityMismatch,
  CycleDetected,
  DanglingNet,
  NoPath,
  UnknownPort,
  SchemaViolation,
  ValueOutOfRange,
  OddWidth,
  ConfigInvalid,
  EmptyPortList,
  NonMonotoneStimulusTime,
  UnknownNet,
  OutputsIllegal,
  ResidualState,
  AssertionFailed,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` tells callers which
/// contract was broken, `what()` names the offending ids.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace asyncadd
