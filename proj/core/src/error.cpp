#include "tphk/error.hpp"

namespace tphk {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DenominatorNearZero: return "DenominatorNearZero";
    case ErrorCode::NotInvertibleOnCircle: return "NotInvertibleOnCircle";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::IllConditionedRoots: return "IllConditionedRoots";
    case ErrorCode::BetaInsideDisk: return "BetaInsideDisk";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::NotFredholm: return "NotFredholm";
    case ErrorCode::WrongSide: return "WrongSide";
    case ErrorCode::SignatureIndeterminate: return "SignatureIndeterminate";
    case ErrorCode::CrossCheckMismatch: return "CrossCheckMismatch";
    case ErrorCode::BadPlusFactor: return "BadPlusFactor";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::NotInKernel: return "NotInKernel";
    case ErrorCode::WrongRegime: return "WrongRegime";
    case ErrorCode::NotFredholmPair: return "NotFredholmPair";
    case ErrorCode::NoSpectralGap: return "NoSpectralGap";
    case ErrorCode::WindowTooTight: return "WindowTooTight";
    case ErrorCode::AtJumpPoint: return "AtJumpPoint";
    case ErrorCode::NotMatching: return "NotMatching";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace tphk
