#include "hideseek/error.hpp"

namespace hideseek {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyGame: return "EmptyGame";
    case ErrorCode::NonPositiveTime: return "NonPositiveTime";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::CyclicInconsistent: return "CyclicInconsistent";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::BaseOutOfRange: return "BaseOutOfRange";
    case ErrorCode::InvalidStrategy: return "InvalidStrategy";
    case ErrorCode::InvalidOrdering: return "InvalidOrdering";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::PerfectDetectionUnsupported: return "PerfectDetectionUnsupported";
    case ErrorCode::InsufficientPrefix: return "InsufficientPrefix";
    case ErrorCode::NoCycleDetected: return "NoCycleDetected";
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::DegenerateFloors: return "DegenerateFloors";
    case ErrorCode::FloorUnderflow: return "FloorUnderflow";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DualInconsistent: return "DualInconsistent";
    case ErrorCode::SequenceLimit: return "SequenceLimit";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateFloors:
    case ErrorCode::FloorUnderflow:
    case ErrorCode::Infeasible:
    case ErrorCode::NumericalFailure:
    case ErrorCode::DualInconsistent:
    case ErrorCode::SequenceLimit:
    case ErrorCode::NoCycleDetected:
      return false;
    default:
      return true;
  }
}

}  // namespace hideseek
