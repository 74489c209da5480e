#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tphk {

enum class ErrorCode {
  DenominatorNearZero,
  NotInvertibleOnCircle,
  GridTooSmall,
  IllConditionedRoots,
  BetaInsideDisk,
  PoleHit,
  NotFredholm,
  WrongSide,
  SignatureIndeterminate,
  CrossCheckMismatch,
  BadPlusFactor,
  NotInvertible,
  NotApplicable,
  NotInKernel,
  WrongRegime,
  NotFredholmPair,
  NoSpectralGap,
  WindowTooTight,
  AtJumpPoint,
  NotMatching,
  InvalidInput,
};

std::string_view to_string(ErrorCode code) noexcept;

/// All library failures surface as this exception; `code()` is stable and
/// is what the CLI reports in its "error" field.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tphk
