#include "wise/error.hpp"

namespace wise {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Structural: return "structural";
    case ErrorKind::UnsupportedLayout: return "unsupported-layout";
    case ErrorKind::BadMagic: return "bad-magic";
    case ErrorKind::UnsupportedVersion: return "unsupported-version";
    case ErrorKind::Truncated: return "truncated";
    case ErrorKind::CorruptStream: return "corrupt-stream";
    case ErrorKind::UndefinedEntropy: return "undefined-entropy";
    case ErrorKind::MalformedHeader: return "malformed-header";
    case ErrorKind::UnsupportedDepth: return "unsupported-depth";
    case ErrorKind::FormatMismatch: return "format-mismatch";
    case ErrorKind::Io: return "io";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

}  // namespace wise
