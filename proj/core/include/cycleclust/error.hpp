#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cycleclust {

/// Failure categories raised by the library. Every throw site uses `Error`
/// with one of these codes so callers (and the CLI exit-code mapping) can
/// dispatch without parsing messages.
enum class Errc {
  // markov_core
  NegativeEntry,
  RowSumViolation,
  NotConverged,
  NonUnique,
  DimensionMismatch,
  OverlappingSets,
  NonFinite,
  // cycle_model / mip_build
  InvalidClustering,
  InvalidClusterCount,
  FractionalSolution,
  InfeasibleAssignment,
  ObjectiveMismatch,
  // solver
  IterationLimit,
  NumericalFailure,
  TooLarge,
  // instance_gen
  TooFewPoints,
  DegenerateRow,
  NonFiniteState,
  InvalidTerminalCount,
  IsolatedNonTerminal,
  // io / plumbing
  ParseError,
  InvalidArgument,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cycleclust
