#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rigidbound {

enum class ErrorCode {
  MalformedStep,
  ValidityViolation,
  NoSequenceFound,
  ResourceLimit,
  CorruptCache,
  IncompatiblePinning,
  NotApplicable,
  DegenerateLiftingRetriesExhausted,
  DimensionMismatch,
  TooLarge,
  Overflow,
  NonInteger,
  OutOfRange,
  UnknownName,
  BadParams,
  InvalidInput,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedStep: return "MalformedStep";
    case ErrorCode::ValidityViolation: return "ValidityViolation";
    case ErrorCode::NoSequenceFound: return "NoSequenceFound";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::CorruptCache: return "CorruptCache";
    case ErrorCode::IncompatiblePinning: return "IncompatiblePinning";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::DegenerateLiftingRetriesExhausted: return "DegenerateLiftingRetriesExhausted";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::NonInteger: return "NonInteger";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can report it in machine-readable form.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rigidbound
