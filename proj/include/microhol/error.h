#ifndef MICROHOL_ERROR_H_
#define MICROHOL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace microhol {

// Every failure raised by the library carries one of these kinds so that
// callers (the article checker, the CLI) can report them uniformly.
enum class ErrorKind {
  kIllTyped,
  kNotAnEquation,
  kMiddleMismatch,
  kVarFreeInHyps,
  kNotABetaRedex,
  kNotBoolean,
  kMismatch,
  kNotClosed,
  kTypeVarEscape,
  kDuplicateName,
  kMalformedInhabitation,
  kUnknownConstant,
  kUnknownType,
  kForeignTheorem,
  kAxiomUnavailable,
  kCarrierOverflow,
  kUnassignedTypeVar,
  kUninterpretableConstant,
  kSyntaxError,
  kReplayError,
  kFingerprintMismatch,
  kDanglingReference,
  kNotPropositional,
  kNotATautology,
  kOutOfFragment,
  kDepthExhausted,
  kDerivedRule,
};

std::string_view error_kind_name(ErrorKind kind);

class HolError : public std::runtime_error {
 public:
  HolError(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw HolError(kind, message);
}

}  // namespace microhol

#endif  // MICROHOL_ERROR_H_
