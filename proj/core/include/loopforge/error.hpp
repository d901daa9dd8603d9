#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loopforge {

enum class ErrorCode {
  kDivisionByZero,
  kEnumerationUnsupported,
  kInvalidField,
  kDimensionMismatch,
  kLatinSquareViolation,
  kNoIdentityAtZero,
  kNotNormal,
  kSeriesMismatch,
  kOrderBoundExceeded,
  kNotCommutativeMoufang,
  kUnknownName,
  kInputNotGroup,
  kGateFailed,
  kDimensionBoundExceeded,
  kIdealNotProper,
  kIdealNotStable,
  kAlternatorIdealFull,
  kSidedInverseMismatch,
  kNotQuasiregular,
  kUnsupported,
  kNotNil,
  kCrossCheckMismatch,
  kNotEmbeddable,
  kParse,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace loopforge
