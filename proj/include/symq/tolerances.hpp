#pragma once

namespace symq {

// Numeric comparison thresholds used across the pipeline. "default" is the
// shipped contract; "strict" tightens everything that is not already exact
// for paranoid re-runs.
struct Tolerances {
  double hom_derived = 1e-10;     // homomorphism residual, derived representations
  double hom_explicit = 1e-8;     // homomorphism residual up to phase, explicit mode
  double unitarity = 1e-10;       // ||U^H U - I||_F for supplied matrices
  double subspace = 1e-10;        // invariant-subspace commutation residual
  double transport = 1e-9;        // subspace transport residual
  double eigen_residual = 1e-9;   // ||T v - lambda v||
  double state_match = 1e-9;      // overlap defect when identifying states
  double phase_zero = 1e-12;      // coordinate treated as zero when fixing phase
  double stochastic = 1e-10;      // row/column sums of transition matrices
  double symmetry = 1e-12;        // transpose symmetry of transition matrices
  double hermitian = 1e-12;       // Hermiticity defect of density matrices
  double psd = 1e-10;             // eigenvalue floor for density matrices
  double trace_one = 1e-10;
  double prob_clamp = 1e-12;      // clamp band around [0,1] for computed probabilities
  double uniform = 1e-12;         // posterior uniformity under equal likelihoods
  double eigen_cluster = 1e-8;    // relative gap that merges eigenvalues into one cluster

  static Tolerances defaults() { return {}; }
  static Tolerances strict() {
    Tolerances t;
    t.hom_derived = 1e-12;
    t.unitarity = 1e-12;
    t.subspace = 1e-12;
    t.transport = 1e-11;
    t.eigen_residual = 1e-11;
    t.state_match = 1e-11;
    t.stochastic = 1e-12;
    return t;
  }
};

}  // namespace symq
