#pragma once

#include <stdexcept>
#include <string>

namespace plp {

enum class ErrorCode {
  InvalidArgument = 1,
  SingularMatrix,
  NotSublattice,
  Overflow,
  UnsupportedLattice,
  NotInDual,
  NotInCone,
  NotInSpan,
  ToleranceUnreachable,
  OutOfHypothesis,
  InsufficientDerivatives,
  BranchMismatch,
  MonotonicitySpotCheck,
  SignPattern,
  ConvexitySpotCheck,
  AssumptionSpotCheck,
  NotCPSD,
  OutOfRange,
  Schema,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plp
