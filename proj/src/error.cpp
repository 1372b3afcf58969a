#include "ag/error.hpp"

namespace ag {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::Conflict: return "conflict";
    case ErrorKind::Cycle: return "cycle-error";
    case ErrorKind::TimeOrder: return "time-order-error";
    case ErrorKind::Timeline: return "timeline-error";
    case ErrorKind::MergeConflict: return "merge-conflict";
    case ErrorKind::InvalidTransition: return "invalid-transition";
    case ErrorKind::AlignmentFailure: return "alignment-failure";
    case ErrorKind::Reference: return "reference-error";
    case ErrorKind::Validation: return "validation-error";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::Io: return "io-error";
  }
  return "error";
}

std::string ParseError::render(const std::string& message, std::size_t line,
                               std::size_t column) {
  std::string out = "line " + std::to_string(line);
  if (column > 0) out += ":" + std::to_string(column);
  out += ": " + message;
  return out;
}

}  // namespace ag
