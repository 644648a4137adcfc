#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace specinv {

enum class ErrorCode {
  kInvalidConfig,
  kInvalidInput,
  kUnsupportedKind,
  kFileNotFound,
  kFileWrite,
  kMalformedRiff,
  kUnsupportedCodec,
  kBadMagic,
  kVersionMismatch,
  kTruncated,
  kMeasurement,
};

/// Short stable tag for an error code, e.g. "invalid-config".
std::string_view error_tag(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace specinv
