#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace compactify {

enum class ErrorKind {
  InvalidSystem,
  IndexOutOfRange,
  InvalidPresentation,
  InvalidPartition,
  InvalidMap,
  GroundMismatch,
  PreconditionViolated,
  InvalidChain,
  ShapeMismatch,
  EmptyAtom,
  NotOnto,
  AtomizationInvalid,
  ConditionFails,
  NotFirstKind,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace compactify
