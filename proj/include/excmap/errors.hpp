#pragma once

#include <stdexcept>
#include <string>

namespace excmap {

enum class ErrorKind {
  NotPrime,
  DegreeTooLarge,
  FieldMismatch,
  DivisionByZero,
  ZeroElement,
  NoEmbedding,
  ConstantMap,
  CapExceeded,
  GroupTooLarge,
  InvalidTriple,
  NotNormal,
  NotGenerator,
  NotTransitive,
  NotIntermediate,
  NotAUnit,
  WildRoot,
  NotOneUnit,
  NotTotallyRamifiedShape,
  WildOrder,
  NotCoprime,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Single exception type for the whole library; `kind` carries the
/// machine-checkable error class, `what()` the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace excmap
