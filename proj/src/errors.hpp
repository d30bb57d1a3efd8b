#pragma once

#include <stdexcept>
#include <string>

namespace rectiflip {

enum class ErrorCode {
  InvalidArgument,
  DuplicateX,
  DuplicateY,
  PointOutsideRect,
  IllegalFlip,
  IllegalRotate,
  InvalidDirection,
  NotDiagonal,
  NotCollinear,
  PhasePreconditionViolated,
  StripTooLarge,
  AuditViolation,
  LimitExceeded,
  Disconnected,
  UnknownKey,
  StrategyMismatch,
  Parse,
  Io,
  InvalidState,
  Internal,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Internal consistency failure: an algorithm reached a state its proof rules out.
[[noreturn]] void internal_error(const std::string& message);

}  // namespace rectiflip
