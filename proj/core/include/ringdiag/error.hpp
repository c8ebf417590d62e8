#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ringdiag {

enum class ErrorCode {
  MissingComposite,
  ParallelMorphisms,
  NonIdentityEndomorphism,
  CycleDetected,
  UnknownObject,
  InvalidRing,
  NoCanonicalMap,
  NotModuleFinite,
  RingMismatch,
  DimensionMismatch,
  InvalidComplex,
  InvalidMap,
  TransitivityViolation,
  UnsupportedShape,
  InvalidSquare,
  OracleDisagreement,
  Internal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the engine carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ringdiag
