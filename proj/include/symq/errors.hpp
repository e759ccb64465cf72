#pragma once

#include <stdexcept>
#include <string>

namespace symq {

// Base for every error raised by the library. Each concrete type corresponds
// to one failure mode of the public contracts, so callers and tests can catch
// precisely.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define SYMQ_ERROR(NAME)                                        \
  struct NAME : Error {                                         \
    explicit NAME(const std::string& what) : Error(what) {}     \
  }

SYMQ_ERROR(CapExceeded);        // group or domain grew past the configured cap
SYMQ_ERROR(NotBijective);       // a supplied index array is not a permutation
SYMQ_ERROR(NotPermissible);     // induced action requested for a non-permissible map
SYMQ_ERROR(EmptyLevelSet);      // a declared value is never attained
SYMQ_ERROR(MissingEigenvalues); // numeric eigenvalues required but absent
SYMQ_ERROR(AssumptionViolation);// a structural assumption check failed hard
SYMQ_ERROR(UnitarityViolation); // a supplied or constructed matrix is not unitary
SYMQ_ERROR(NoFactorization);    // no base-experiment factorization exists
SYMQ_ERROR(UnknownExperiment);
SYMQ_ERROR(UnknownValue);
SYMQ_ERROR(AmbiguousState);     // a state matches questions with conflicting answers
SYMQ_ERROR(NotGCS);             // a vector lies outside the generated state orbit
SYMQ_ERROR(InvalidDistribution);
SYMQ_ERROR(ZeroEvidence);       // all hypotheses assign probability zero to the data
SYMQ_ERROR(DimensionMismatch);
SYMQ_ERROR(TooLarge);           // request exceeds a hard size limit
SYMQ_ERROR(ParseError);
SYMQ_ERROR(ValidationError);

#undef SYMQ_ERROR

}  // namespace symq
