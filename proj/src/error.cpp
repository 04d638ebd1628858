#include "treevar/error.hpp"

namespace treevar {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BoundsError: return "BoundsError";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::LabelViolation: return "LabelViolation";
    case ErrorKind::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::RootForbidden: return "RootForbidden";
    case ErrorKind::RootConflict: return "RootConflict";
    case ErrorKind::BadRange: return "BadRange";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotAPencil: return "NotAPencil";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::RankSamplingFailure: return "RankSamplingFailure";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorKind kind, const std::string& message,
                     const std::optional<SourcePosition>& position) {
  std::string out = to_string(kind);
  if (position) {
    out += " at " + std::to_string(position->line) + ":" + std::to_string(position->column);
  }
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::optional<SourcePosition> position)
    : std::runtime_error(decorate(kind, message, position)), kind_(kind), position_(position) {}

}  // namespace treevar
