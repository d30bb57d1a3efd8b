#include "errors.hpp"

namespace rectiflip {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicateX: return "DuplicateX";
    case ErrorCode::DuplicateY: return "DuplicateY";
    case ErrorCode::PointOutsideRect: return "PointOutsideRect";
    case ErrorCode::IllegalFlip: return "IllegalFlip";
    case ErrorCode::IllegalRotate: return "IllegalRotate";
    case ErrorCode::InvalidDirection: return "InvalidDirection";
    case ErrorCode::NotDiagonal: return "NotDiagonal";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::PhasePreconditionViolated: return "PhasePreconditionViolated";
    case ErrorCode::StripTooLarge: return "StripTooLarge";
    case ErrorCode::AuditViolation: return "AuditViolation";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::StrategyMismatch: return "StrategyMismatch";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Io: return "Io";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

void internal_error(const std::string& message) {
  throw Error(ErrorCode::Internal, message);
}

}  // namespace rectiflip
