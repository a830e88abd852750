#include "schemamatch/error.hpp"

namespace schemamatch {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::DuplicateAttribute: return "duplicate attribute";
    case ErrorCode::UnsupportedType: return "unsupported type";
    case ErrorCode::InvalidName: return "invalid name";
    case ErrorCode::InvalidAlias: return "invalid alias";
    case ErrorCode::EmptyInput: return "empty input";
    case ErrorCode::InvalidK: return "invalid k";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::UndefinedScore: return "undefined score";
    case ErrorCode::NoValidSize: return "no valid size";
    case ErrorCode::NoCandidates: return "no candidates";
    case ErrorCode::MalformedPrediction: return "malformed prediction";
    case ErrorCode::Io: return "i/o error";
  }
  return "unknown error";
}

bool is_data_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse:
    case ErrorCode::DuplicateAttribute:
    case ErrorCode::UnsupportedType:
    case ErrorCode::InvalidName:
    case ErrorCode::InvalidAlias:
    case ErrorCode::MalformedPrediction:
    case ErrorCode::Io:
      return true;
    default:
      return false;
  }
}

}  // namespace schemamatch
