#pragma once

#include <stdexcept>
#include <string>

namespace frames {

// Base class for everything this library throws on a contract violation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define FRAMES_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

FRAMES_DEFINE_ERROR(ShapeMismatch);        // descriptor / rank / dimension disagreement
FRAMES_DEFINE_ERROR(SingularElement);      // inverse of a numerically singular element
FRAMES_DEFINE_ERROR(NotHermitian);
FRAMES_DEFINE_ERROR(OffNodeEvaluation);    // tabulated map evaluated away from its nodes
FRAMES_DEFINE_ERROR(RuleMismatch);         // operands tabulated on different quadrature rules
FRAMES_DEFINE_ERROR(NegativeWeight);       // measure weight negative at a quadrature node
FRAMES_DEFINE_ERROR(NotAFrame);
FRAMES_DEFINE_ERROR(NotADual);
FRAMES_DEFINE_ERROR(NullityViolated);      // candidate difference map fails the moment condition
FRAMES_DEFINE_ERROR(HypothesisViolated);   // operator pair fails X1*X2^* = I
FRAMES_DEFINE_ERROR(NotCentral);
FRAMES_DEFINE_ERROR(AffinityViolated);     // coefficients fail a1 + a2 = 1
FRAMES_DEFINE_ERROR(ParseError);
FRAMES_DEFINE_ERROR(SchemaError);
FRAMES_DEFINE_ERROR(BlockPatternViolation);
FRAMES_DEFINE_ERROR(NamedObjectMissing);
FRAMES_DEFINE_ERROR(UnknownCommand);

#undef FRAMES_DEFINE_ERROR

}  // namespace frames
