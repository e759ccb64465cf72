#pragma once

#include <string>
#include <vector>

#include "symq/group.hpp"
#include "symq/linalg.hpp"
#include "symq/tolerances.hpp"

namespace symq {

struct ClosureVerdict {
  bool closed = true;
  int point = -1, generator = -1;  // witness when not closed
};

// A subset of the action's domain is closed under the whole group iff it is
// closed under every generator (inverses are generator powers in a finite
// group).
ClosureVerdict orbit_closure_check(const std::vector<int>& subset, const GroupAction& action);

struct ZeroPatternCensus {
  int coordinates = 0;
  long long patterns = 0;      // 2^p, all certified closed
  bool all_closed = true;
};

// Componentwise positive scaling fixes exactly the zero/nonzero status of
// each coordinate, so every zero-pattern subset is a union of orbits. The
// census walks all 2^p patterns and certifies each one.
ZeroPatternCensus zero_pattern_census(int p);

// Guards the symbolic checker's scope: only constraints of the shape
// "name=0" / "name!=0" are zero patterns; anything else (ties between
// coordinates, inequalities) is rejected with an explanation.
std::vector<std::pair<std::string, bool>> parse_zero_pattern(const std::string& text);

struct Stratum {
  double eigenvalue = 0.0;
  int dimension = 0;
  Matrix projector;
};

struct StrataReport {
  int units = 0;
  std::vector<std::vector<int>> blocks;
  int pair_classes = 0;
  std::vector<std::vector<int>> class_of;  // symmetric pair-class labels
  std::vector<int> instantiation;          // distinct primes per class
  std::vector<Stratum> strata;             // descending eigenvalue
  long long symmetry_group_order = 0;
  bool pattern_invariant = true;           // class labels fixed by the group
  bool checked_every_element = false;      // full enumeration vs generators
  bool transitive = true;                  // block-respecting group on units
  double numeric_invariance_worst = 0.0;   // || P C P^T - C ||
  double projector_sum_residual = 0.0;     // || sum proj - I ||
  double strata_invariance_worst = 0.0;    // || U proj - proj U || over generators
};

// Pair-class covariance pattern of a blocked design, its eigenspaces, and
// the invariance certificates. Blocks empty = one block of all units.
StrataReport randomization_strata(int units, std::vector<std::vector<int>> blocks,
                                  const Tolerances& tol = Tolerances::defaults());

}  // namespace symq
