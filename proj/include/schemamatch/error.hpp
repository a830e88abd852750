#pragma once

#include <stdexcept>
#include <string>

namespace schemamatch {

enum class ErrorCode {
  Parse,
  DuplicateAttribute,
  UnsupportedType,
  InvalidName,
  InvalidAlias,
  EmptyInput,
  InvalidK,
  InvalidArgument,
  UndefinedScore,
  NoValidSize,
  NoCandidates,
  MalformedPrediction,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

// Data/parse problems versus failures inside the matching pipeline.
bool is_data_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Error(ErrorCode code, std::string stage, const std::string& message)
      : std::runtime_error(stage + ": " + message), code_(code), stage_(std::move(stage)) {}

  ErrorCode code() const noexcept { return code_; }

  // Empty unless the error was raised or re-tagged by the pipeline.
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorCode code_;
  std::string stage_;
};

}  // namespace schemamatch
