#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace adaptreg {

enum class ErrorCode {
  EmptyBatch,
  RaggedRows,
  ArityMismatch,
  InsufficientRows,
  NumericalFailure,
  PushWhenFull,
  NonFiniteInput,
  InvalidArgument,
  WrongPhase,
  LengthMismatch,
  EmptyInput,
  EmptyTrace,
  FileNotFound,
  ParseError,
  SchemaMismatch,
  InsufficientData,
  IoError,
  ConfigError,
  MissingTrace,
};

inline std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyBatch: return "EmptyBatch";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::InsufficientRows: return "InsufficientRows";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::PushWhenFull: return "PushWhenFull";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::WrongPhase: return "WrongPhase";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyTrace: return "EmptyTrace";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MissingTrace: return "MissingTrace";
  }
  return "Unknown";
}

}  // namespace adaptreg
