#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spcp {

enum class ErrorCode {
  // instance_core
  MalformedHeader,
  MalformedLine,
  EdgeIndexOutOfRange,
  DuplicateEdge,
  DisconnectedGraph,
  InvalidMatrix,
  StrataSamplingFailed,
  InvalidP,
  EmptyStratum,
  IndexOutOfRange,
  InvalidWeights,
  // distance_index / formulations
  UnsupportedVariant,
  IllegalRelaxation,
  UnsupportedCombination,
  SymbolUnavailable,
  CardinalityMismatch,
  // milp_engine
  InvalidModel,
  NumericalFailure,
  NameTooLong,
  ZeroOptimum,
  // preprocess
  InconsistentBound,
  // exact_search / saa
  BadCardinality,
  TooLarge,
  SamplingFailed,
  // cli
  DisagreementDetected,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure surfaced by the library carries one of the codes above so
/// callers (tests, the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spcp
