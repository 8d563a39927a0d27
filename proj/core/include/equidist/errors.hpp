#pragma once

#include <stdexcept>
#include <string>

namespace equidist {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EQUIDIST_DEFINE_ERROR(Name)        \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

EQUIDIST_DEFINE_ERROR(GeneratorSetMismatch);
EQUIDIST_DEFINE_ERROR(InvalidGenerator);
EQUIDIST_DEFINE_ERROR(PrecisionExhausted);
EQUIDIST_DEFINE_ERROR(DimensionMismatch);
EQUIDIST_DEFINE_ERROR(AllTopCoefficientsRational);
EQUIDIST_DEFINE_ERROR(DomainError);
EQUIDIST_DEFINE_ERROR(CardinalityOverflow);
EQUIDIST_DEFINE_ERROR(ZeroVector);
EQUIDIST_DEFINE_ERROR(RejectionBudgetExceeded);
EQUIDIST_DEFINE_ERROR(EmptySequence);
EQUIDIST_DEFINE_ERROR(GridBudgetExceeded);
EQUIDIST_DEFINE_ERROR(NoLatticePointsBeyondT);
EQUIDIST_DEFINE_ERROR(ParseError);

#undef EQUIDIST_DEFINE_ERROR

}  // namespace equidist
