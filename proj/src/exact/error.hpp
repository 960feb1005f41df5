#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace strata {

enum class ErrorCode {
  DivisionByZero,
  SpecMismatch,
  BallExceeded,
  RadiusTooLarge,
  NotWInvariant,
  NotASubgroup,
  GroupTooLarge,
  CharFieldError,
  InvalidCocycle,
  PointOffTorus,
  ShiftMissing,
  PointOffBase,
  OrbitTooLarge,
  SplitFieldError,
  NotScalar,
  NotAMorphism,
  FiltrationNotRespected,
  LocusOffBase,
  UnsupportedDescriptor,
  ParseError,
  ValidationError,
  Overflow,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// C layer can map it onto a stable integer.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace strata
