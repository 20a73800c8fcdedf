#pragma once

#include <stdexcept>
#include <string>

namespace toreq {

enum class ErrorKind {
  InvalidArgument,
  Syntax,
  ZeroPolynomial,
  DimensionMismatch,
  VanishesOnOrbit,
  ZeroSpecialization,
  VanishesAtPoint,
  PrecisionExhausted,
  DegenerateDistance,
  RootFindingFailure,
  BudgetTooSmall,
  NumericalUnderflow,
  ToralZeroHits,
  AllVanish,
  InsufficientData,
  Cancelled,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, int line, int column);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace toreq
