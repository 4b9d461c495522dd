#pragma once

#include <stdexcept>
#include <string>

namespace chaincx {

/// Failure categories. The CLI maps each kind to a distinct process exit
/// code, so library code should pick the kind by what went wrong, not by
/// where the throw happens to live.
enum class ErrorKind {
  parse,       ///< malformed input text
  validation,  ///< data violates a structural invariant
  algorithm,   ///< operation precondition or runtime failure
  io,          ///< filesystem or stream failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

/// Process exit code for a failure kind (0 is success, 1 is reserved for
/// unexpected exceptions).
inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return 2;
    case ErrorKind::validation: return 3;
    case ErrorKind::algorithm: return 4;
    case ErrorKind::io: return 5;
  }
  return 1;
}

}  // namespace chaincx
