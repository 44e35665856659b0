#include "expower/error.hpp"

namespace expower {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDegenerateDenominator: return "degenerate-denominator";
    case ErrorCode::kDegenerateVariance: return "degenerate-variance";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kUnattainablePower: return "unattainable-power";
    case ErrorCode::kInsufficientBudget: return "insufficient-budget";
    case ErrorCode::kEmptyContour: return "empty-contour";
    case ErrorCode::kInvalidReference: return "invalid-reference";
    case ErrorCode::kMissingGame: return "missing-game";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kEmptyData: return "empty-data";
    case ErrorCode::kInvalidSpec: return "invalid-spec";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace expower
