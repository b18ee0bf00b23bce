#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorKind {
  DimensionMismatch,
  NotHermitian,
  NotPSD,
  TraceNotOne,
  NotNormalized,
  UnknownFamily,
  ParamOutOfRange,
  NotADistribution,
  SinglePartyState,
  AngleOutOfRange,
  NotUnitary,
  NotAProjector,
  NotAQubit,
  LengthMismatch,
  BadOrder,
  NonFinite,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries the violated invariant as a
/// machine-checkable kind plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qcorr
