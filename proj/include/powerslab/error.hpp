#pragma once

#include <stdexcept>
#include <string>

namespace powerslab {

enum class ErrorKind {
  Parse,
  InvalidParams,
  ParamsMismatch,
  EllipticInput,
  BasePointShadow,
  OrbitBudgetExceeded,
  ConditionStarFailed,
  FIntersectsK,
  SeparationNotFound,
  BudgetExceeded,
  InvalidN,
  EmptyInterior,
  InvalidCertificate,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace powerslab
