#pragma once

#include <stdexcept>
#include <string>

namespace sylvester {

enum class ErrorKind {
  DimensionMismatch,
  InvalidArgument,
  UnboundedSet,
  NotInSet,
  ZeroVector,
  NotInDomain,
  UnsupportedCombination,
  UnsupportedDynamic,
  EmptyInstance,
  EncloseTargetsPresent,
  DegenerateFarthest,
  NoValidGenerator,
  ParseError,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with the 1-based position of the offending token.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error(ErrorKind::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace sylvester
