#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pointing {

enum class ErrorCode {
  InvalidArgument,
  UnboundedSection,
  OffPlane,
  OutOfExtent,
  InvalidScene,
  UnknownSupport,
  NoStablePlacement,
  InvalidCount,
  EmptyScene,
  NoPointingTarget,
  TypeMismatch,
  EmptyInput,
  DegenerateTable,
  InvalidCounts,
  IoError,
  SchemaError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` identifies the failure
/// class named in the public contracts.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pointing
