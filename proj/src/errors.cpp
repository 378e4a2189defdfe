#include "ovc/errors.hpp"

namespace ovc {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BadThreshold: return "BadThreshold";
    case ErrorCode::BadLaneWidth: return "BadLaneWidth";
    case ErrorCode::BadRateRatio: return "BadRateRatio";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::BadImageFormat: return "BadImageFormat";
    case ErrorCode::GeometryOverflow: return "GeometryOverflow";
    case ErrorCode::RowOrderViolation: return "RowOrderViolation";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::BadVersion: return "BadVersion";
    case ErrorCode::TruncatedBundle: return "TruncatedBundle";
    case ErrorCode::TooManyFeatures: return "TooManyFeatures";
  }
  return "UnknownError";
}

}  // namespace ovc
