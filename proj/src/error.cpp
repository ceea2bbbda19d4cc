#include "spcp/error.hpp"

namespace spcp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::EdgeIndexOutOfRange: return "EdgeIndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::StrataSamplingFailed: return "StrataSamplingFailed";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::EmptyStratum: return "EmptyStratum";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::UnsupportedVariant: return "UnsupportedVariant";
    case ErrorCode::IllegalRelaxation: return "IllegalRelaxation";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::SymbolUnavailable: return "SymbolUnavailable";
    case ErrorCode::CardinalityMismatch: return "CardinalityMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NameTooLong: return "NameTooLong";
    case ErrorCode::ZeroOptimum: return "ZeroOptimum";
    case ErrorCode::InconsistentBound: return "InconsistentBound";
    case ErrorCode::BadCardinality: return "BadCardinality";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    case ErrorCode::DisagreementDetected: return "DisagreementDetected";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace spcp
