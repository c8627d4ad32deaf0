#include "endorank/error.hpp"

namespace endorank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::InfiniteField: return "InfiniteField";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::NotABase: return "NotABase";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::MethodRefused: return "MethodRefused";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::RelationViolation: return "RelationViolation";
    case ErrorCode::NoFixedPointFound: return "NoFixedPointFound";
    case ErrorCode::ConstantTermSurvives: return "ConstantTermSurvives";
    case ErrorCode::GeneratorNotFound: return "GeneratorNotFound";
    case ErrorCode::NonAffineImage: return "NonAffineImage";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::CoefficientParseError: return "CoefficientParseError";
    case ErrorCode::InputError: return "InputError";
  }
  return "Unknown";
}

}  // namespace endorank
