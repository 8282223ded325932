#include "charfol/error.hpp"

namespace charfol {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::NoModulusFound: return "NoModulusFound";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotSimpleRoot: return "NotSimpleRoot";
    case ErrorCode::NoModel: return "NoModel";
    case ErrorCode::NotAPthPower: return "NotAPthPower";
    case ErrorCode::NoDescent: return "NoDescent";
    case ErrorCode::NoDerivationDescent: return "NoDerivationDescent";
    case ErrorCode::RelationNotPreserved: return "RelationNotPreserved";
    case ErrorCode::ZeroForm: return "ZeroForm";
    case ErrorCode::NotSurfaceChart: return "NotSurfaceChart";
    case ErrorCode::NotPClosed: return "NotPClosed";
    case ErrorCode::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
    case ErrorCode::GenusMismatch: return "GenusMismatch";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::FormulaMismatch: return "FormulaMismatch";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::LatticeMismatch: return "LatticeMismatch";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NotOnVariety: return "NotOnVariety";
    case ErrorCode::UnsupportedPresentation: return "UnsupportedPresentation";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

}  // namespace charfol
