#include "powerslab/error.hpp"

namespace powerslab {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ParamsMismatch: return "ParamsMismatch";
    case ErrorKind::EllipticInput: return "EllipticInput";
    case ErrorKind::BasePointShadow: return "BasePointShadow";
    case ErrorKind::OrbitBudgetExceeded: return "OrbitBudgetExceeded";
    case ErrorKind::ConditionStarFailed: return "ConditionStarFailed";
    case ErrorKind::FIntersectsK: return "FIntersectsK";
    case ErrorKind::SeparationNotFound: return "SeparationNotFound";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::InvalidN: return "InvalidN";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::InvalidCertificate: return "InvalidCertificate";
  }
  return "Error";
}

}  // namespace powerslab
