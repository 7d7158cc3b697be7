#pragma once

#include <stdexcept>
#include <string>

namespace ptk {

enum class Err {
  IndexBeyondHorizon,
  OutOfRange,
  EmptyBase,
  HorizonRequired,
  OrderUnknown,
  NotVeryLargeAtHorizon,
  EmptyMember,
  NotMember,
  NotInSkippedRestriction,
  NotAPlegmaUnion,
  WrongArity,
  BadIndex,
  SupportTooLarge,
  EmptyRestriction,
  BudgetExhausted,
  NoTupleAtStep,
  BadInput,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::IndexBeyondHorizon: return "IndexBeyondHorizon";
    case Err::OutOfRange: return "OutOfRange";
    case Err::EmptyBase: return "EmptyBase";
    case Err::HorizonRequired: return "HorizonRequired";
    case Err::OrderUnknown: return "OrderUnknown";
    case Err::NotVeryLargeAtHorizon: return "NotVeryLargeAtHorizon";
    case Err::EmptyMember: return "EmptyMember";
    case Err::NotMember: return "NotMember";
    case Err::NotInSkippedRestriction: return "NotInSkippedRestriction";
    case Err::NotAPlegmaUnion: return "NotAPlegmaUnion";
    case Err::WrongArity: return "WrongArity";
    case Err::BadIndex: return "BadIndex";
    case Err::SupportTooLarge: return "SupportTooLarge";
    case Err::EmptyRestriction: return "EmptyRestriction";
    case Err::BudgetExhausted: return "BudgetExhausted";
    case Err::NoTupleAtStep: return "NoTupleAtStep";
    case Err::BadInput: return "BadInput";
  }
  return "Unknown";
}

/// Domain error carrying one of the error codes above.
class DomainError : public std::runtime_error {
 public:
  DomainError(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) {
  throw DomainError(code, what);
}

}  // namespace ptk
