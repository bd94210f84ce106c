#pragma once

#include <stdexcept>
#include <string>

namespace kstab {

enum class ErrorCode {
  InvalidInput,
  DegenerateRoot,
  ClosureOverflow,
  Unbounded,
  Empty,
  LowerDimensional,
  NotWeylInvariant,
  NotExtendable,
  ArityMismatch,
  BadFacet,
  ZeroMass,
  NotDominant,
  SingularMoment,
  ZeroOffsetFacet,
  ZeroNorm,
  NoConvergence,
  NonConvexEdgeData,
  NotAKernelElement,
  RankUnsupported,
  PreconditionNotMet,
  Io,
  Schema,
};

const char* to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// that callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kstab
