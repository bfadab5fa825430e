#include "ramlock/error.hpp"

namespace ramlock {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonEisenstein: return "NonEisenstein";
    case ErrorKind::ReducibleUnramPoly: return "ReducibleUnramPoly";
    case ErrorKind::EvenPrime: return "EvenPrime";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotEquivariant: return "NotEquivariant";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::OrderViolation: return "OrderViolation";
    case ErrorKind::RankUnsupported: return "RankUnsupported";
    case ErrorKind::CapTooSmall: return "CapTooSmall";
    case ErrorKind::InconsistentInput: return "InconsistentInput";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::BothDivisible: return "BothDivisible";
    case ErrorKind::NoPthRoots: return "NoPthRoots";
    case ErrorKind::NotOrdinary: return "NotOrdinary";
    case ErrorKind::NotSupersingular: return "NotSupersingular";
    case ErrorKind::NotGood: return "NotGood";
    case ErrorKind::NotCM: return "NotCM";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::SplitCase: return "SplitCase";
    case ErrorKind::TorsionHypothesisFails: return "TorsionHypothesisFails";
    case ErrorKind::VeluUnsupported: return "VeluUnsupported";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::CapReached: return "CapReached";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ResidueFieldTooLarge: return "ResidueFieldTooLarge";
    case ErrorKind::Unstabilized: return "Unstabilized";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ramlock
