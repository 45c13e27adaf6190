#pragma once

#include <stdexcept>
#include <string>

namespace reldiff {

enum class ErrorCode {
  Parse = 1,
  UndefinedSymbol,
  NonCommutingTable,
  DivisionByZero,
  ConstantPolynomial,
  NotAutoreduced,
  NotInBaseRing,
  DimensionMismatch,
  NotOnVariety,
  NotOnGroup,
  Semantic,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
  ParseError(const std::string& what, int line, int column, ErrorCode code = ErrorCode::Parse)
      : Error(code, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        detail_(what), line_(line), column_(column)
  {
  }
  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

private:
  std::string detail_;
  int line_;
  int column_;
};

}  // namespace reldiff
