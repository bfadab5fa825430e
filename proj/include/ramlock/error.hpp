#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ramlock {

/// Error classes. The CLI maps each class to a fixed exit code.
enum class ErrorKind {
  // input validation
  NonEisenstein,
  ReducibleUnramPoly,
  EvenPrime,
  InvalidArgument,
  ParseError,
  NotAUnit,
  NotEquivariant,
  NotExact,
  FieldMismatch,
  OrderViolation,
  RankUnsupported,
  CapTooSmall,
  InconsistentInput,
  // hypotheses of a theorem or lemma fail for the given data
  HypothesisViolated,
  BothDivisible,
  NoPthRoots,
  NotOrdinary,
  NotSupersingular,
  NotGood,
  NotCM,
  NotSplit,
  SplitCase,
  TorsionHypothesisFails,
  VeluUnsupported,
  NotFound,
  // resource limits
  CapReached,
  DegreeCapExceeded,
  PrecisionExhausted,
  ResidueFieldTooLarge,
  Unstabilized,
  // bugs
  Internal,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace ramlock
