#pragma once

#include <stdexcept>
#include <string>

namespace scorpion {

enum class ErrorKind {
  NotFound,
  UnsupportedFormat,
  TruncatedPayload,
  SchemaViolation,
  DimensionMismatch,
  InvalidArgument,
  DegenerateData,
  IoFailure,
  Divergence,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-checkable error kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace scorpion
