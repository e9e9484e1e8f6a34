#include "tfg/error.hpp"

namespace tfg {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Representation: return "representation error";
    case ErrorCode::Depth: return "depth error";
    case ErrorCode::Precondition: return "precondition error";
    case ErrorCode::Invariance: return "invariance error";
    case ErrorCode::NotSpatiallyConsistent: return "not spatially consistent";
    case ErrorCode::OracleInconsistency: return "oracle inconsistency";
    case ErrorCode::Resolution: return "resolution error";
    case ErrorCode::InvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::Parse,
            line ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tfg
