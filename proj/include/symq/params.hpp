#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symq/group.hpp"

namespace symq {

// A total map from the configuration set {0..m-1} onto a finite value list.
// `numeric` optionally attaches measurement eigenvalues to the values; when
// `maximal` is true they must be pairwise distinct.
struct ParameterMap {
  std::string name;
  std::vector<std::string> values;
  std::vector<int> table;                  // table[phi] = value index
  std::optional<std::vector<double>> numeric;
  bool maximal = true;

  int domain_size() const { return static_cast<int>(table.size()); }
  int value_count() const { return static_cast<int>(values.size()); }
  // Indices of configurations attaining each value, ascending.
  std::vector<std::vector<int>> level_sets() const;
  void validate() const;  // surjectivity, range, numeric distinctness
};

// Witness for a failed permissibility check: two configurations sharing a
// value whose images under `element` disagree.
struct PermissibilityWitness {
  int phi1 = -1, phi2 = -1;
  int element = -1;  // index into the checked group
};

struct PermissibilityResult {
  bool permissible = true;
  std::optional<PermissibilityWitness> witness;
};

// lambda(phi1) == lambda(phi2)  =>  lambda(phi1 g) == lambda(phi2 g) for all
// g in `h` (elements act through their full-degree permutations).
PermissibilityResult is_permissible(const ParameterMap& map, const FiniteGroup& h);

// The set {g : g preserves the level partition of `map`} inside `parent`,
// returned as a subgroup with parent back-references. The set is closed by
// construction; this is asserted, not assumed.
FiniteGroup maximal_permissible_subgroup(const ParameterMap& map, const FiniteGroup& parent);

// Action of `h` on the value list induced by a permissible map. Throws
// NotPermissible otherwise (with the witness in the message).
GroupAction induced_action(const ParameterMap& map, const FiniteGroup& h);

// First element of `g` (enumeration order) with
//   lambda_b(phi) == lambda_a(phi g) for every phi.
// Requires identical value lists; returns nullopt when no element works.
std::optional<int> find_transition_element(const ParameterMap& a, const ParameterMap& b,
                                           const FiniteGroup& g);

// Consistent system of transition elements for every ordered pair of
// experiments: lambda_b(phi) = lambda_a(phi g_ab), g_ab g_bc = g_ac,
// g_aa = identity, and the element set closes into a subgroup.
struct TransitionFamily {
  int base = 0;                              // experiment the family was grown from
  std::vector<std::vector<int>> element;     // element[a][b] = group element index
  std::vector<int> member_elements;          // sorted distinct elements of the family

  int operator()(int a, int b) const { return element[a][b]; }
};

inline constexpr int kFamilySearchBudget = 10000;

struct FamilySearchResult {
  std::optional<TransitionFamily> family;
  bool pair_missing = false;       // some ordered pair admits no element at all
  int missing_a = -1, missing_b = -1;
  bool budget_exhausted = false;
  long long combinations_tried = 0;
  bool subgroup_closed = false;    // refers to the returned family when present
};

FamilySearchResult build_transition_family(const std::vector<ParameterMap>& params,
                                           const FiniteGroup& g, int base,
                                           int budget = kFamilySearchBudget);

// Structural checks A-D over a scenario's parameter maps.
//   A: each value list is a single orbit of the induced subgroup action
//   B: the per-experiment subgroups together generate the whole group
//   C: a transition family with the cocycle property exists and its element
//      set is a subgroup
//   D: value lists are finite (structural; reported with the counts)
struct AssumptionReport {
  struct PerExperiment {
    std::string name;
    int value_count = 0;
    bool permissible_under_group = false;       // under the full group
    std::optional<PermissibilityWitness> witness;
    std::vector<int> subgroup_elements;         // parent indices, sorted
    int subgroup_order = 0;
    bool single_induced_orbit = false;
    Partition induced_orbits;
  };
  std::vector<PerExperiment> experiments;
  bool a = false, b = false, c = false, d = true;
  int generated_by_subgroups_order = 0;
  FamilySearchResult family_search;
  int group_order = 0;
};

AssumptionReport check_assumptions(const std::vector<ParameterMap>& params,
                                   const FiniteGroup& g, int base_experiment);

}  // namespace symq
