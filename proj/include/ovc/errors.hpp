#pragma once

#include <stdexcept>
#include <string>

namespace ovc {

enum class ErrorCode {
  DimensionTooSmall,
  LengthMismatch,
  BadThreshold,
  BadLaneWidth,
  BadRateRatio,
  FileNotFound,
  BadImageFormat,
  GeometryOverflow,
  RowOrderViolation,
  BadMagic,
  BadVersion,
  TruncatedBundle,
  TooManyFeatures,
};

const char* error_code_name(ErrorCode code);

// Contract violations carry a machine-readable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ovc
