#pragma once

#include <stdexcept>
#include <string>

namespace toric {

// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define TORIC_DEFINE_ERROR(Name)                              \
  class Name : public Error {                                 \
   public:                                                    \
    explicit Name(const std::string& what) : Error(what) {}   \
  }

// Exact linear algebra.
TORIC_DEFINE_ERROR(ZeroVector);
TORIC_DEFINE_ERROR(DimMismatch);
TORIC_DEFINE_ERROR(NotABasis);

// Fans.
TORIC_DEFINE_ERROR(InvalidRay);
TORIC_DEFINE_ERROR(InvalidCone);
TORIC_DEFINE_ERROR(OverlappingCones);
TORIC_DEFINE_ERROR(NotPositivelySpanning);
TORIC_DEFINE_ERROR(NotComplete);
TORIC_DEFINE_ERROR(NonSimplicialCone);

// Polytopes.
TORIC_DEFINE_ERROR(InvalidPolytope);
TORIC_DEFINE_ERROR(NotFullDimensional);
TORIC_DEFINE_ERROR(NotAVertex);
TORIC_DEFINE_ERROR(InvalidWitness);
TORIC_DEFINE_ERROR(NotVeryAmple);

// Class groups and monoids.
TORIC_DEFINE_ERROR(ConeNotInFan);
TORIC_DEFINE_ERROR(RaysDoNotSpan);

// Monoid membership search ran out of budget on a non-pointed cone.
TORIC_DEFINE_ERROR(Inconclusive);

// Input documents.
TORIC_DEFINE_ERROR(ParseError);

#undef TORIC_DEFINE_ERROR

}  // namespace toric
