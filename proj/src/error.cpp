#include "rainbow/error.hpp"

namespace rainbow {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::StartEndMismatch: return "StartEndMismatch";
    case ErrorCode::Divisibility: return "DivisibilityError";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::ColourCountMismatch: return "ColourCountMismatch";
    case ErrorCode::InfeasibleDegrees: return "InfeasibleDegrees";
    case ErrorCode::NoCopyFound: return "NoCopyFound";
    case ErrorCode::AbsorberFailed: return "AbsorberFailed";
    case ErrorCode::SizesMismatch: return "SizesMismatch";
    case ErrorCode::PartitionFailed: return "PartitionFailed";
    case ErrorCode::Unachievable: return "Unachievable";
  }
  return "Unknown";
}

}  // namespace rainbow
