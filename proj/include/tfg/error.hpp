#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tfg {

enum class ErrorCode {
  Parse,
  Representation,
  Depth,
  Precondition,
  Invariance,
  NotSpatiallyConsistent,
  OracleInconsistency,
  Resolution,
  InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

/// Base of every error thrown by the library. The code is what the C API
/// reports; the message is meant for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  /// 1-based; 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace tfg
