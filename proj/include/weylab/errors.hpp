#pragma once

#include <stdexcept>
#include <string>

namespace weylab {

enum class ErrorCode {
  OrderExceeded,
  DeltaOutOfRange,
  InvalidParameter,
  UnsupportedFamily,
  OffsetNotOnGrid,
  GridTooSmall,
  EigSolveFailure,
  EmptySet,
  GridMismatch,
  TooCloseToSpectrum,
  ShiftTooLarge,
  CoverageFailure,
  ColumnMissing,
  NonPositiveData,
  TooFewPoints,
  ConfigError,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

  // Config-shaped problems exit with 2, numerical failures with 3.
  bool is_config_error() const {
    switch (code_) {
      case ErrorCode::OrderExceeded:
      case ErrorCode::DeltaOutOfRange:
      case ErrorCode::InvalidParameter:
      case ErrorCode::UnsupportedFamily:
      case ErrorCode::OffsetNotOnGrid:
      case ErrorCode::ColumnMissing:
      case ErrorCode::ConfigError:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace weylab
