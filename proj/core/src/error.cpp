#include "loopforge/error.hpp"

namespace loopforge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kEnumerationUnsupported: return "EnumerationUnsupported";
    case ErrorCode::kInvalidField: return "InvalidField";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLatinSquareViolation: return "LatinSquareViolation";
    case ErrorCode::kNoIdentityAtZero: return "NoIdentityAtZero";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kSeriesMismatch: return "SeriesMismatch";
    case ErrorCode::kOrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorCode::kNotCommutativeMoufang: return "NotCommutativeMoufang";
    case ErrorCode::kUnknownName: return "UnknownName";
    case ErrorCode::kInputNotGroup: return "InputNotGroup";
    case ErrorCode::kGateFailed: return "GateFailed";
    case ErrorCode::kDimensionBoundExceeded: return "DimensionBoundExceeded";
    case ErrorCode::kIdealNotProper: return "IdealNotProper";
    case ErrorCode::kIdealNotStable: return "IdealNotStable";
    case ErrorCode::kAlternatorIdealFull: return "AlternatorIdealFull";
    case ErrorCode::kSidedInverseMismatch: return "SidedInverseMismatch";
    case ErrorCode::kNotQuasiregular: return "NotQuasiregular";
    case ErrorCode::kUnsupported: return "Unsupported";
    case ErrorCode::kNotNil: return "NotNil";
    case ErrorCode::kCrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::kNotEmbeddable: return "NotEmbeddable";
    case ErrorCode::kParse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace loopforge
