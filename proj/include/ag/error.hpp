#ifndef AG_ERROR_HPP
#define AG_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ag {

enum class ErrorKind {
  InvalidArgument,
  NotFound,
  Conflict,
  Cycle,
  TimeOrder,
  Timeline,
  MergeConflict,
  InvalidTransition,
  AlignmentFailure,
  Reference,
  Validation,
  Parse,
  Io,
};

const char* to_string(ErrorKind kind);

/// Base class for all toolkit errors. Carries a machine-checkable kind
/// next to the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Reader failure with source position. Line and column are 1-based;
/// column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column = 0)
      : Error(ErrorKind::Parse, render(message, line, column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string render(const std::string& message, std::size_t line,
                            std::size_t column);

  std::size_t line_;
  std::size_t column_;
};

}  // namespace ag

#endif  // AG_ERROR_HPP
