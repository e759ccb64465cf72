#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symq/hilbert.hpp"
#include "symq/linalg.hpp"
#include "symq/params.hpp"
#include "symq/tolerances.hpp"

namespace symq {

// g = (element of the base experiment's subgroup) * (transition element).
struct Factorization {
  int subgroup_element = -1;   // parent index into the full group
  int experiment = -1;         // the b of the transition element used
  int transition_element = -1; // parent index of g_{cb}
};

// Subgroup of the base experiment plus its induced action, shared by the
// factorization and state constructions.
struct BaseStructure {
  int base = 0;
  FiniteGroup subgroup;
  GroupAction induced;
  std::vector<int> sub_pos;  // full-group index -> subgroup index or -1
};

BaseStructure base_structure(const std::vector<ParameterMap>& params, const FiniteGroup& g,
                             int base);

// First factorization in deterministic order (experiments in declared
// order, subgroup elements in enumeration order).
Factorization factorize_element(int g, const FiniteGroup& group, const BaseStructure& base,
                                const TransitionFamily& family, int n_experiments);

// Every factorization, for uniqueness certification.
std::vector<Factorization> all_factorizations(int g, const FiniteGroup& group,
                                              const BaseStructure& base,
                                              const TransitionFamily& family, int n_experiments);

struct PureState {
  Vector vector;           // canonical phase
  int experiment = -1;     // annotation, -1 when unannotated
  int value = -1;
};

// Eigenstates v_k^a = W(g_{ca}) v_k^c for every experiment and value, with
// the base experiment's states being the coordinate basis.
struct StateTable {
  int base = 0;
  int dim = 0;
  std::vector<std::vector<PureState>> states;  // [experiment][value]

  const PureState& at(int a, int k) const;
};

StateTable build_states(const std::vector<ParameterMap>& params, const AbstractRep& w,
                        const TransitionFamily& family, int base);

PureState state_from_question(int a, int k, const StateTable& table);

// All (experiment, value) pairs whose eigenstate matches v up to phase
// within the overlap tolerance; empty => NotGCS is thrown.
std::vector<std::pair<int, int>> question_from_state(const Vector& v, const StateTable& table,
                                                     double overlap_tol = 1e-9);

// The unique match; AmbiguousState when distinct questions share the state.
std::pair<int, int> unique_question_from_state(const Vector& v, const StateTable& table,
                                               double overlap_tol = 1e-9);

// {canonical(W(g) v0)} deduplicated up to phase.
std::vector<Vector> gcs_orbit(const Vector& v0, const AbstractRep& w, double dedup_tol = 1e-9);

struct StateAssumptionReport {
  bool injective = true;            // pairwise distinctness of W(g) v0
  int collide_g = -1, collide_h = -1;
  bool covers_eigenbasis = true;    // orbit contains every v_k^a
  int missing_a = -1, missing_k = -1;
  int orbit_size = 0;
};

StateAssumptionReport check_state_assumptions(const AbstractRep& w, const Vector& v0,
                                              const StateTable& table, double tol = 1e-9);

struct DensityMatrixT {
  Matrix matrix;
};

// rho = sum_k pi(k) v_k^a v_k^a^H; pi must be a probability vector.
DensityMatrixT density_from_distribution(const RealVector& pi, int a, const StateTable& table,
                                         const Tolerances& tol = Tolerances::defaults());

void validate_density(const DensityMatrixT& rho, const Tolerances& tol = Tolerances::defaults());

// sum_k lambda_k^a v_k^a v_k^a^H; agrees with the transported diagonal form.
Matrix parameter_operator(int a, const std::vector<ParameterMap>& params,
                          const StateTable& table);

struct CommutantReport {
  int dimension = 0;               // null-space dimension of [T, .]
  std::vector<Matrix> basis;       // matrices spanning the commutant
  bool maximal = false;            // dimension == n
  std::vector<int> multiplicities; // eigenvalue cluster sizes
  std::optional<Matrix> witness;   // commutes with T, not a function of T
};

// Solves T X = X T as a linear system over n x n matrices (n <= 16).
CommutantReport commutant_analysis(const Matrix& t,
                                   const Tolerances& tol = Tolerances::defaults());

// Common eigenbasis of two commuting self-adjoint matrices; the returned
// columns diagonalize both within the given residual.
struct SimultaneousBasis {
  Matrix basis;
  double worst_residual = 0.0;
};

SimultaneousBasis simultaneous_eigenbasis(const Matrix& a, const Matrix& b,
                                          double cluster_tol = 1e-8);

}  // namespace symq
