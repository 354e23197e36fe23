#include "ordlab/error.hpp"

namespace ordlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::SumNotOne: return "SumNotOne";
    case ErrorCode::RowSumNotOne: return "RowSumNotOne";
    case ErrorCode::ColumnSumNotOne: return "ColumnSumNotOne";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SameObject: return "SameObject";
    case ErrorCode::TiesPresent: return "TiesPresent";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::MuOutOfRange: return "MuOutOfRange";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ParametersTooLarge: return "ParametersTooLarge";
    case ErrorCode::InconsistentBase: return "InconsistentBase";
    case ErrorCode::MalformedProgram: return "MalformedProgram";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::NotOrdinal: return "NotOrdinal";
    case ErrorCode::EndpointsInDifferentCones: return "EndpointsInDifferentCones";
    case ErrorCode::NotOrdinalOnU: return "NotOrdinalOnU";
    case ErrorCode::InvalidVDomain: return "InvalidVDomain";
    case ErrorCode::InvalidEconomy: return "InvalidEconomy";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnknownRule: return "UnknownRule";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UsageError: return "UsageError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace ordlab
