#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace treepack {

enum class ErrorKind {
  NotATree,
  OutOfRange,
  SingletonTree,
  BadSize,
  NotAPermutation,
  DimensionMismatch,
  NotComplete,
  BoundExceeded,
  NotAutomorphism,
  InvalidFamily,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

// All library failures are reported through this one exception type; callers
// branch on kind() rather than on the dynamic type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SingletonTree: return "SingletonTree";
    case ErrorKind::BadSize: return "BadSize";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::InvalidFamily: return "InvalidFamily";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace treepack
