#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace expower {

enum class ErrorCode {
  kDegenerateDenominator,
  kDegenerateVariance,
  kInvalidArgument,
  kUnattainablePower,
  kInsufficientBudget,
  kEmptyContour,
  kInvalidReference,
  kMissingGame,
  kDomain,
  kEmptyData,
  kInvalidSpec,
  kParse,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library; the code distinguishes failure kinds.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace expower
