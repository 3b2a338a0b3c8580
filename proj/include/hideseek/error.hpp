#pragma once

#include <stdexcept>
#include <string>

namespace hideseek {

enum class ErrorCode {
  // Input validation.
  EmptyGame,
  NonPositiveTime,
  ProbabilityOutOfRange,
  CyclicInconsistent,
  NotCoprime,
  BaseOutOfRange,
  InvalidStrategy,
  InvalidOrdering,
  InvalidArgument,
  ParseError,
  // Structural preconditions.
  NotCyclic,
  CapExceeded,
  PerfectDetectionUnsupported,
  InsufficientPrefix,
  NoCycleDetected,
  EmptyBatch,
  // Numerics.
  DegenerateFloors,
  FloorUnderflow,
  Infeasible,
  NumericalFailure,
  DualInconsistent,
  SequenceLimit,
};

const char* to_string(ErrorCode code) noexcept;

/// True for codes caused by bad input rather than by numerics.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hideseek
