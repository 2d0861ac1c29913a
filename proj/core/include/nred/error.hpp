#pragma once

#include <stdexcept>
#include <string>

namespace nred {

enum class ErrorCode {
  parse_error,
  validation_error,
  block_symbol_missing,
  unknown_location,
  action_unreachable,
  inconsistent_inputs,
  not_applicable,
  alphabet_collision,
  too_many_variables,
  depth_exceeded,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position (0 when not applicable).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorCode::parse_error, format(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, int line, int column) {
    if (line <= 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  int line_;
  int column_;
};

}  // namespace nred
