#include "toreq/error.hpp"

namespace toreq {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::VanishesOnOrbit: return "VanishesOnOrbit";
    case ErrorKind::ZeroSpecialization: return "ZeroSpecialization";
    case ErrorKind::VanishesAtPoint: return "VanishesAtPoint";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DegenerateDistance: return "DegenerateDistance";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorKind::NumericalUnderflow: return "NumericalUnderflow";
    case ErrorKind::ToralZeroHits: return "ToralZeroHits";
    case ErrorKind::AllVanish: return "AllVanish";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::Cancelled: return "Cancelled";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(const std::string& message, int line, int column)
    : Error(ErrorKind::Syntax, "line " + std::to_string(line) + ", column " +
                                   std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace toreq
