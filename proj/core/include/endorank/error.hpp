#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace endorank {

enum class ErrorCode {
  SpecMismatch,
  ArityMismatch,
  DivisionByZero,
  InfiniteField,
  InvalidField,
  DegreeCapExceeded,
  BudgetExceeded,
  InvalidIndex,
  NotABase,
  PreconditionViolated,
  MethodRefused,
  SearchExhausted,
  RelationViolation,
  NoFixedPointFound,
  ConstantTermSurvives,
  GeneratorNotFound,
  NonAffineImage,
  ZeroScale,
  InvariantViolation,
  SyntaxError,
  UnknownVariable,
  CoefficientParseError,
  InputError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Budget and search exhaustion are resource outcomes, not wrong answers.
  bool is_exhaustion() const noexcept {
    return code_ == ErrorCode::BudgetExceeded || code_ == ErrorCode::SearchExhausted ||
           code_ == ErrorCode::DegreeCapExceeded;
  }

 private:
  ErrorCode code_;
};

/// Carries every attempted candidate so a failed search can be inspected.
class SearchExhaustedError : public Error {
 public:
  SearchExhaustedError(const std::string& what, std::vector<std::string> attempts)
      : Error(ErrorCode::SearchExhausted, what), attempts_(std::move(attempts)) {}

  const std::vector<std::string>& attempts() const noexcept { return attempts_; }

 private:
  std::vector<std::string> attempts_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace endorank
