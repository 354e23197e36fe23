#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ordlab {

enum class ErrorCode {
  NegativeEntry,
  SumNotOne,
  RowSumNotOne,
  ColumnSumNotOne,
  DimensionMismatch,
  SameObject,
  TiesPresent,
  WrongDimension,
  NotAPermutation,
  MuOutOfRange,
  PreconditionViolated,
  ParametersTooLarge,
  InconsistentBase,
  MalformedProgram,
  AlphaOutOfRange,
  NotOrdinal,
  EndpointsInDifferentCones,
  NotOrdinalOnU,
  InvalidVDomain,
  InvalidEconomy,
  InvalidConfig,
  UnknownRule,
  ParseError,
  IoError,
  UsageError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ordlab
