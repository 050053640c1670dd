#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freespec {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  NotHermitian,
  DimensionMismatch,
  NormNotOne,
  NotInDisk,
  BadLambda,
  NotNilpotent,
  NotAWalk,
  LimitExceeded,
  InvalidGraph,
  SelfLoop,
  LabelCollision,
  AntiparallelPair,
  ZeroCoefficient,
  NotUnitary,
  BidiskCase,
  DegenerateIntersection,
  SingularL,
  Schema,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library. The code is
/// stable and is what the CLI maps to exit statuses and report fields.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace freespec
