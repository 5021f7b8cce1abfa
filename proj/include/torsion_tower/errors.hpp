#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torsion_tower {

enum class ErrorCode {
  NotARoot,
  NonSimpleRoot,
  DenominatorNotInvertible,
  NotProjective,
  NotInvertible,
  RelatorViolation,
  DivisorCountExceedsGenerators,
  NonpositiveVolume,
  ResourceLimitExceeded,
  RankMismatch,
  ParseError,
  ValidationError,
  NoPlottableRecords,
  InvalidArgument,
  IoError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotARoot: return "NotARoot";
    case ErrorCode::NonSimpleRoot: return "NonSimpleRoot";
    case ErrorCode::DenominatorNotInvertible: return "DenominatorNotInvertible";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::RelatorViolation: return "RelatorViolation";
    case ErrorCode::DivisorCountExceedsGenerators: return "DivisorCountExceedsGenerators";
    case ErrorCode::NonpositiveVolume: return "NonpositiveVolume";
    case ErrorCode::ResourceLimitExceeded: return "ResourceLimitExceeded";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::NoPlottableRecords: return "NoPlottableRecords";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

// Every failure raised by the library carries a code; the batch driver
// records the code name in the CSV error column.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace torsion_tower
