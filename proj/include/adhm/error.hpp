#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adhm {

enum class ErrorCode {
  DivisionByZero,
  FieldMismatch,
  DimensionMismatch,
  UnsupportedField,
  BoundExceeded,
  NoFraming,
  InvalidPair,
  ZeroRepresentation,
  NotSemistable,
  PreconditionViolated,
  NeedsS2Certificate,
  InvalidChernData,
  NotS0Stable,
  InvalidPoint,
  NotS2,
  NotStable,
  MalformedInput,
  InvalidField,
  InternalError,
};

constexpr std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::BoundExceeded: return "BoundExceeded";
    case ErrorCode::NoFraming: return "NoFraming";
    case ErrorCode::InvalidPair: return "InvalidPair";
    case ErrorCode::ZeroRepresentation: return "ZeroRepresentation";
    case ErrorCode::NotSemistable: return "NotSemistable";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NeedsS2Certificate: return "NeedsS2Certificate";
    case ErrorCode::InvalidChernData: return "InvalidChernData";
    case ErrorCode::NotS0Stable: return "NotS0Stable";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::NotS2: return "NotS2";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

/// Single exception type for the library; the code identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace adhm
