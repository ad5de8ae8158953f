#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cumica {

enum class ErrorKind {
  NotPositiveDefinite,
  NotSymmetric,
  RankDeficient,
  NotUnit,
  IndexOutOfRange,
  DimensionMismatch,
  InvalidArgument,
  SingularCustomWhitener,
  InvalidSpec,
  InvalidParams,
  ZeroDenominator,
  AssumptionViolated,
  SingularInput,
  ParseError,
  RunFailed,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `component()` is the zero-based index of the
/// offending source/component/assumption when one applies, otherwise -1.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, int component = -1);

  ErrorKind kind() const noexcept { return kind_; }
  int component() const noexcept { return component_; }

 private:
  ErrorKind kind_;
  int component_;
};

}  // namespace cumica
