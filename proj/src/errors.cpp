#include "bellrecycle/errors.hpp"

namespace bellrecycle {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::InvalidBloch: return "InvalidBloch";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::QualityExceedsReversibility: return "QualityExceedsReversibility";
    case ErrorCode::BiasedWeakPointer: return "BiasedWeakPointer";
    case ErrorCode::NonUnitalInstrument: return "NonUnitalInstrument";
    case ErrorCode::NegativeRadicand: return "NegativeRadicand";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::NoRealRoot: return "NoRealRoot";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotNonlocal: return "NotNonlocal";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace bellrecycle
