#include "qcap/error.hpp"

namespace qcap {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidBlochVector: return "InvalidBlochVector";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IncompleteMeasurement: return "IncompleteMeasurement";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InfiniteDivergence: return "InfiniteDivergence";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::DegenerateLoss: return "DegenerateLoss";
    case ErrorCode::DegeneratePair: return "DegeneratePair";
    case ErrorCode::Divergent: return "Divergent";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace qcap
