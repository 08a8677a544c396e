#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace defekt {

enum class ErrorCode {
  InvalidArgument,
  NonPrimeModulus,
  InvalidField,
  InfiniteField,
  DivisionByZero,
  SyntaxError,
  UnknownVariable,
  CoefficientNotInField,
  IndexOutOfRange,
  NotHomogeneous,
  DimensionMismatch,
  RationalsNotSamplable,
  BudgetExceeded,
  RingMismatch,
  NotZeroDimensional,
  RationalFieldUnsupported,
  CharacteristicTwo,
  EvenCharacteristic,
  SmoothPoint,
  PointNotOnHypersurface,
  NonIsolatedSingularity,
  NoChartFound,
  PositiveDimensionalLocus,
  UnresolvedPoints,
  BaseNotSmooth,
  NotNodal,
  OddAmbientDimension,
  WrongAmbientDimension,
  UnclassifiedSingularity,
  UsageError,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace defekt
