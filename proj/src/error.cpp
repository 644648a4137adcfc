#include "specinv/error.hpp"

namespace specinv {

std::string_view error_tag(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidConfig: return "invalid-config";
    case ErrorCode::kInvalidInput: return "invalid-input";
    case ErrorCode::kUnsupportedKind: return "unsupported-kind";
    case ErrorCode::kFileNotFound: return "file-not-found";
    case ErrorCode::kFileWrite: return "file-write";
    case ErrorCode::kMalformedRiff: return "malformed-riff";
    case ErrorCode::kUnsupportedCodec: return "unsupported-codec";
    case ErrorCode::kBadMagic: return "bad-magic";
    case ErrorCode::kVersionMismatch: return "version-mismatch";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kMeasurement: return "measurement";
  }
  return "unknown";
}

}  // namespace specinv
