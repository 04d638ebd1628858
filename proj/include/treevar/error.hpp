#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace treevar {

enum class ErrorKind {
  ParseError,
  BoundsError,
  EmptyInput,
  NotATree,
  LabelViolation,
  LabelOutOfRange,
  UnknownVertex,
  RootForbidden,
  RootConflict,
  BadRange,
  NotPrime,
  NotAPencil,
  Degenerate,
  RankSamplingFailure,
  CapExceeded,
  IterationLimit,
};

const char* to_string(ErrorKind kind);

struct SourcePosition {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Single exception type for the library; `kind` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<SourcePosition> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<SourcePosition>& position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<SourcePosition> position_;
};

}  // namespace treevar
