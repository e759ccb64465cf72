#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symq/group.hpp"
#include "symq/linalg.hpp"
#include "symq/params.hpp"
#include "symq/tolerances.hpp"

namespace symq {

// Permutation matrices of the group's defining action: row phi of U(g) has
// its single 1 at column phi*g, so U(g)U(h) = U(gh) exactly in integers.
struct RegularRep {
  const FiniteGroup* group = nullptr;
  std::vector<IntMatrix> matrices;  // 0/1, indexed like group->elements

  const IntMatrix& operator()(int g) const { return matrices[g]; }
};

RegularRep regular_rep(const FiniteGroup& g, const GroupAction& action);

struct ExactCheck {
  bool pass = true;
  int g = -1, h = -1;  // first offending pair when !pass
};

// U(g)U(h) == U(gh) by integer matrix multiplication, all pairs.
ExactCheck verify_regular_exact(const RegularRep& rep);

// Orthonormal level-set indicator vectors of one experiment, one column per
// value in declared order; entries |level set|^(-1/2) on the level set.
struct InvariantSubspace {
  std::string experiment;
  Matrix basis;  // |phi| x n

  int dim() const { return static_cast<int>(basis.cols()); }
  Matrix projector() const { return basis * basis.adjoint(); }
};

InvariantSubspace indicator_basis(const ParameterMap& map);

struct SubspaceInvarianceReport {
  bool pass = true;
  double worst = 0.0;
  int bad_element = -1;  // parent index of the first offender
};

// P U(g) P == U(g) P for every g of `sub` (given by parent indices into
// rep's group); P projects onto the subspace.
SubspaceInvarianceReport verify_subspace_invariance(const InvariantSubspace& sub_a,
                                                    const RegularRep& rep,
                                                    const FiniteGroup& sub,
                                                    double tol = Tolerances::defaults().subspace);

// Frobenius distance || P_b - U(g_ab) P_a U(g_ab)^H ||.
double transport_distance(const InvariantSubspace& a, const InvariantSubspace& b,
                          const RegularRep& rep, int g_ab);

// Diagonal matrix of the declared eigenvalues, acting on the subspace
// coordinates in declared value order.
Matrix build_S(const ParameterMap& map);

// Unitary representation on the n-dimensional coordinate space, either
// derived from the induced value actions or supplied by the scenario.
struct AbstractRep {
  enum class Origin { derived, supplied };
  Origin origin = Origin::derived;
  bool projective = false;
  int dim = 0;
  const FiniteGroup* group = nullptr;
  std::vector<Matrix> matrices;

  const Matrix& operator()(int g) const { return matrices[g]; }
};

struct RepVerification {
  double worst_homomorphism = 0.0;
  double worst_unitarity = 0.0;
  int bad_g = -1, bad_h = -1;
};

// Checks W(g)W(h) = W(gh) over the whole Cayley table (up to a global phase
// when projective) and unitarity of every matrix. Throws nothing; callers
// compare against their tolerance.
RepVerification verify_rep(const AbstractRep& w);

// Derived mode: each generator factors as (subgroup element of the base
// experiment) * (transition element); the subgroup part acts by its induced
// value permutation and the transition part is the identity in matched
// indicator coordinates. The product extends along the group's generation
// order, then the whole table is verified; an inconsistent extension is an
// AssumptionViolation.
AbstractRep build_w_derived(const std::vector<ParameterMap>& params, const FiniteGroup& g,
                            const TransitionFamily& family, int base,
                            const Tolerances& tol = Tolerances::defaults());

// Explicit mode: generator images from the scenario, extended along the
// generation order and verified the same way (up to phase when projective).
AbstractRep build_w_explicit(const std::vector<std::pair<std::string, Matrix>>& images,
                             const std::vector<std::pair<std::string, Perm>>& generators,
                             const FiniteGroup& g, bool projective,
                             const Tolerances& tol = Tolerances::defaults());

// T_a = W(g_ca) T_c W(g_ca)^H for the family's base-to-a element.
Matrix build_T(int a, const AbstractRep& w, const Matrix& t_c, const TransitionFamily& family);

// Permutation matrix of an induced action element (row v -> column v*g).
Matrix action_matrix(const GroupAction& action, int g);

}  // namespace symq
