#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace poissonkit {

/// Machine-readable error categories. The CLI maps `DomainRejection` to exit
/// status 2 and everything else to exit status 1.
enum class ErrorCode {
  DimensionMismatch,
  NotSkew,
  NotSymmetric,
  NotInvariant,
  NotClosed,
  InvalidStructure,
  InconsistentLift,
  NotAdmissible,
  CapExceeded,
  Parse,
  Schema,
  DomainRejection,
  NonConvergence,
  Config,
  Usage,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }

  /// JSON pointer into the offending input, empty when not applicable.
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace poissonkit
