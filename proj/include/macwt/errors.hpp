#pragma once

#include <stdexcept>
#include <string>

namespace macwt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : Error { using Error::Error; };
struct RowSumViolation : Error { using Error::Error; };
struct ProbabilityOutOfRange : Error { using Error::Error; };
struct AlphabetMismatch : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct SymbolOutOfRange : Error { using Error::Error; };
struct ZeroMarginal : Error { using Error::Error; };
struct ZeroConditional : Error { using Error::Error; };
struct EpsilonOutOfRange : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct AxisMismatch : Error { using Error::Error; };
struct NonpositiveMu : Error { using Error::Error; };
struct EmptySystem : Error { using Error::Error; };
struct ConfigParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace macwt
