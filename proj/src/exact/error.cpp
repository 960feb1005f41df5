#include "exact/error.hpp"

namespace strata {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::BallExceeded: return "BallExceeded";
    case ErrorCode::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorCode::NotWInvariant: return "NotWInvariant";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::CharFieldError: return "CharFieldError";
    case ErrorCode::InvalidCocycle: return "InvalidCocycle";
    case ErrorCode::PointOffTorus: return "PointOffTorus";
    case ErrorCode::ShiftMissing: return "ShiftMissing";
    case ErrorCode::PointOffBase: return "PointOffBase";
    case ErrorCode::OrbitTooLarge: return "OrbitTooLarge";
    case ErrorCode::SplitFieldError: return "SplitFieldError";
    case ErrorCode::NotScalar: return "NotScalar";
    case ErrorCode::NotAMorphism: return "NotAMorphism";
    case ErrorCode::FiltrationNotRespected: return "FiltrationNotRespected";
    case ErrorCode::LocusOffBase: return "LocusOffBase";
    case ErrorCode::UnsupportedDescriptor: return "UnsupportedDescriptor";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::Overflow: return "Overflow";
  }
  return "Unknown";
}

}  // namespace strata
