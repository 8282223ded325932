#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace charfol {

// Every failure the library reports is one of these codes. Callers that need
// to branch on the kind of failure inspect Error::code().
enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  NoModulusFound,
  FieldTooLarge,
  FieldMismatch,
  DivisionByZero,
  SyntaxError,
  UnknownVariable,
  NotTriangular,
  ArityMismatch,
  DivisionByZeroSeries,
  PrecisionExhausted,
  NotSimpleRoot,
  NoModel,
  NotAPthPower,
  NoDescent,
  NoDerivationDescent,
  RelationNotPreserved,
  ZeroForm,
  NotSurfaceChart,
  NotPClosed,
  DegreeBoundTooSmall,
  GenusMismatch,
  InvalidParameters,
  FormulaMismatch,
  HypothesisViolated,
  LatticeMismatch,
  NonPositive,
  NotOnVariety,
  UnsupportedPresentation,
  InternalError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures additionally carry the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t position, const std::string& what)
      : Error(code, what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Postconditions that are asserted on every call (not only in tests) throw
// InternalError when violated.
inline void ensure(bool condition, const char* what) {
  if (!condition) throw Error(ErrorCode::InternalError, what);
}

}  // namespace charfol
