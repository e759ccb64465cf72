#pragma once

#include <vector>

#include "symq/hilbert.hpp"
#include "symq/linalg.hpp"
#include "symq/states.hpp"
#include "symq/tolerances.hpp"

namespace symq {

struct TransitionMatrix {
  int source = -1, target = -1;  // experiment indices
  RealMatrix entries;            // (k, i) = |<v_k^source, v_i^target>|^2
};

// |<v, w>|^2, clamped into [0,1] only within the clamp band; larger
// excursions are representation bugs and raise an error.
double transition_probability(const Vector& v, const Vector& w,
                              const Tolerances& tol = Tolerances::defaults());

TransitionMatrix transition_matrix(int a, int b, const StateTable& table,
                                   const Tolerances& tol = Tolerances::defaults());

struct StochasticityReport {
  bool pass = true;
  double worst_row = 0.0, worst_col = 0.0;
};

StochasticityReport check_doubly_stochastic(const TransitionMatrix& m,
                                            double tol = Tolerances::defaults().stochastic);

// P(value i of b | rho) = v_i^b^H rho v_i^b.
RealVector born_with_density(const DensityMatrixT& rho, int b, const StateTable& table,
                             const Tolerances& tol = Tolerances::defaults());

// v^H T_b v; equals sum_i lambda_i^b |<v, v_i^b>|^2.
double conditional_expectation(const Vector& v, const Matrix& t_b);

struct InvarianceReport {
  bool pass = true;
  double worst = 0.0;
  int bad_element = -1;
};

// | |<W(g)u, W(g)w>|^2 - |<u,w>|^2 | over all elements and state pairs.
InvarianceReport check_probability_invariance(const AbstractRep& w, const StateTable& table,
                                              double tol = Tolerances::defaults().stochastic);

}  // namespace symq
