#include "microhol/error.h"

namespace microhol {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIllTyped: return "IllTyped";
    case ErrorKind::kNotAnEquation: return "NotAnEquation";
    case ErrorKind::kMiddleMismatch: return "MiddleMismatch";
    case ErrorKind::kVarFreeInHyps: return "VarFreeInHyps";
    case ErrorKind::kNotABetaRedex: return "NotABetaRedex";
    case ErrorKind::kNotBoolean: return "NotBoolean";
    case ErrorKind::kMismatch: return "Mismatch";
    case ErrorKind::kNotClosed: return "NotClosed";
    case ErrorKind::kTypeVarEscape: return "TypeVarEscape";
    case ErrorKind::kDuplicateName: return "DuplicateName";
    case ErrorKind::kMalformedInhabitation: return "MalformedInhabitation";
    case ErrorKind::kUnknownConstant: return "UnknownConstant";
    case ErrorKind::kUnknownType: return "UnknownType";
    case ErrorKind::kForeignTheorem: return "ForeignTheorem";
    case ErrorKind::kAxiomUnavailable: return "AxiomUnavailable";
    case ErrorKind::kCarrierOverflow: return "CarrierOverflow";
    case ErrorKind::kUnassignedTypeVar: return "UnassignedTypeVar";
    case ErrorKind::kUninterpretableConstant: return "UninterpretableConstant";
    case ErrorKind::kSyntaxError: return "SyntaxError";
    case ErrorKind::kReplayError: return "ReplayError";
    case ErrorKind::kFingerprintMismatch: return "FingerprintMismatch";
    case ErrorKind::kDanglingReference: return "DanglingReference";
    case ErrorKind::kNotPropositional: return "NotPropositional";
    case ErrorKind::kNotATautology: return "NotATautology";
    case ErrorKind::kOutOfFragment: return "OutOfFragment";
    case ErrorKind::kDepthExhausted: return "DepthExhausted";
    case ErrorKind::kDerivedRule: return "DerivedRule";
  }
  return "Unknown";
}

}  // namespace microhol
