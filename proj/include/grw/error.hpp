#pragma once

#include <stdexcept>
#include <string>

namespace grw {

/// Error kinds surfaced to callers. Report-style operations (validation,
/// compatibility checks) return report values instead of throwing.
enum class ErrorKind {
  UnknownLabel,
  DanglingEdge,
  DuplicateNodeId,
  BadIdentifier,
  NodeNotInGraph,
  AlphabetMismatch,
  InconsistentSequence,
  HasDelNode,
  BadRule,
  NotTerminating,
  LimitExceeded,
  Syntax,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace grw
