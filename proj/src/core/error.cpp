#include "scorpion/core/error.hpp"

namespace scorpion {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFound: return "not found";
    case ErrorKind::UnsupportedFormat: return "unsupported format";
    case ErrorKind::TruncatedPayload: return "truncated payload";
    case ErrorKind::SchemaViolation: return "schema violation";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DegenerateData: return "degenerate data";
    case ErrorKind::IoFailure: return "io failure";
    case ErrorKind::Divergence: return "divergence";
  }
  return "unknown error";
}

}  // namespace scorpion
