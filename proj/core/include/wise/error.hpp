#pragma once

#include <stdexcept>
#include <string>

namespace wise {

enum class ErrorKind {
  Structural,         // shape, size or index inconsistency
  UnsupportedLayout,  // channel count the stage cannot handle
  BadMagic,
  UnsupportedVersion,
  Truncated,
  CorruptStream,
  UndefinedEntropy,
  MalformedHeader,
  UnsupportedDepth,
  FormatMismatch,
  Io,
  InvalidArgument,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure surfaced by the codec. `kind()` lets callers and tests
/// distinguish causes without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wise
