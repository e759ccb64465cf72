#include "symq/hilbert.hpp"

#include <algorithm>
#include <cmath>

#include "symq/errors.hpp"

namespace symq {

RegularRep regular_rep(const FiniteGroup& g, const GroupAction& action) {
  const int m = action.domain_size;
  if (static_cast<long long>(g.order()) * m * m > 200'000'000LL)
    throw TooLarge("regular representation would exceed the memory budget");
  RegularRep rep;
  rep.group = &g;
  rep.matrices.reserve(g.order());
  for (int e = 0; e < g.order(); ++e) {
    IntMatrix u = IntMatrix::Zero(m, m);
    for (int phi = 0; phi < m; ++phi) u(phi, action.act(e, phi)) = 1;
    rep.matrices.push_back(std::move(u));
  }
  return rep;
}

ExactCheck verify_regular_exact(const RegularRep& rep) {
  const auto& g = *rep.group;
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b)
      if (rep.matrices[a] * rep.matrices[b] != rep.matrices[g.compose(a, b)])
        return {false, a, b};
  return {};
}

InvariantSubspace indicator_basis(const ParameterMap& map) {
  const auto levels = map.level_sets();
  InvariantSubspace sub;
  sub.experiment = map.name;
  sub.basis = Matrix::Zero(map.domain_size(), map.value_count());
  for (int k = 0; k < map.value_count(); ++k) {
    if (levels[k].empty()) throw EmptyLevelSet("value '" + map.values[k] + "' is never attained");
    const double w = 1.0 / std::sqrt(static_cast<double>(levels[k].size()));
    for (int phi : levels[k]) sub.basis(phi, k) = w;
  }
  return sub;
}

SubspaceInvarianceReport verify_subspace_invariance(const InvariantSubspace& sub_a,
                                                    const RegularRep& rep,
                                                    const FiniteGroup& sub, double tol) {
  SubspaceInvarianceReport out;
  const Matrix p = sub_a.projector();
  for (int i = 0; i < sub.order(); ++i) {
    const int g = sub.parent_index.empty() ? i : sub.parent_index[i];
    const Matrix u = rep.matrices[g].cast<Complex>();
    const double d = frobenius(p * u * p - u * p);
    if (d > out.worst) {
      out.worst = d;
      if (d > tol && out.bad_element < 0) out.bad_element = g;
    }
  }
  out.pass = out.worst <= tol;
  return out;
}

double transport_distance(const InvariantSubspace& a, const InvariantSubspace& b,
                          const RegularRep& rep, int g_ab) {
  const Matrix u = rep.matrices[g_ab].cast<Complex>();
  return frobenius(b.projector() - u * a.projector() * u.adjoint());
}

Matrix build_S(const ParameterMap& map) {
  if (!map.numeric) throw MissingEigenvalues("experiment '" + map.name + "' declares no eigenvalues");
  Matrix s = Matrix::Zero(map.value_count(), map.value_count());
  for (int k = 0; k < map.value_count(); ++k) s(k, k) = (*map.numeric)[k];
  return s;
}

Matrix action_matrix(const GroupAction& action, int g) {
  Matrix u = Matrix::Zero(action.domain_size, action.domain_size);
  for (int v = 0; v < action.domain_size; ++v) u(v, action.act(g, v)) = 1.0;
  return u;
}

RepVerification verify_rep(const AbstractRep& w) {
  RepVerification out;
  const auto& g = *w.group;
  for (int e = 0; e < g.order(); ++e) {
    const double u = frobenius(w.matrices[e].adjoint() * w.matrices[e] -
                               Matrix::Identity(w.dim, w.dim));
    out.worst_unitarity = std::max(out.worst_unitarity, u);
  }
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      const Matrix prod = w.matrices[a] * w.matrices[b];
      const Matrix& target = w.matrices[g.compose(a, b)];
      const double d =
          w.projective ? distance_up_to_phase(prod, target) : frobenius(prod - target);
      if (d > out.worst_homomorphism) {
        out.worst_homomorphism = d;
        out.bad_g = a;
        out.bad_h = b;
      }
    }
  }
  return out;
}

namespace {

// Extends generator images multiplicatively along the same breadth-first
// order used to close the group, so every element gets exactly one matrix.
std::vector<Matrix> extend_from_generators(const FiniteGroup& g,
                                           const std::vector<Matrix>& gen_images, int dim) {
  std::vector<Matrix> w(g.order());
  std::vector<char> have(g.order(), 0);
  w[g.identity_index] = Matrix::Identity(dim, dim);
  have[g.identity_index] = 1;
  // breadth-first: elements were discovered as (known element) * (generator)
  std::vector<int> queue{g.identity_index};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int cur = queue[head];
    for (std::size_t gi = 0; gi < g.generator_indices.size(); ++gi) {
      const int nxt = g.compose(cur, g.generator_indices[gi]);
      if (have[nxt]) continue;
      w[nxt] = w[cur] * gen_images[gi];
      have[nxt] = 1;
      queue.push_back(nxt);
    }
  }
  for (int e = 0; e < g.order(); ++e)
    if (!have[e]) throw AssumptionViolation("generators do not reach every group element");
  return w;
}

void require_verified(AbstractRep& rep, double hom_tol, double unit_tol) {
  if (static_cast<long long>(rep.group->order()) * rep.group->order() * rep.dim * rep.dim *
          rep.dim >
      1'000'000'000LL)
    throw TooLarge("representation verification would exceed the budget");
  const RepVerification v = verify_rep(rep);
  if (v.worst_unitarity > unit_tol)
    throw UnitarityViolation("representation matrix deviates from unitarity by " +
                             std::to_string(v.worst_unitarity));
  if (v.worst_homomorphism > hom_tol)
    throw AssumptionViolation(
        "representation is inconsistent: product check fails at elements (" +
        std::to_string(v.bad_g) + ", " + std::to_string(v.bad_h) + ") with residual " +
        std::to_string(v.worst_homomorphism));
}

}  // namespace

AbstractRep build_w_derived(const std::vector<ParameterMap>& params, const FiniteGroup& g,
                            const TransitionFamily& family, int base, const Tolerances& tol) {
  const auto& base_map = params[base];
  const int n = base_map.value_count();
  const FiniteGroup sub = maximal_permissible_subgroup(base_map, g);
  const GroupAction induced = induced_action(base_map, sub);

  // position of each parent element inside the base subgroup, -1 elsewhere
  std::vector<int> sub_pos(g.order(), -1);
  for (int i = 0; i < sub.order(); ++i) sub_pos[sub.parent_index[i]] = i;

  std::vector<Matrix> gen_images;
  for (std::size_t gi = 0; gi < g.generator_indices.size(); ++gi) {
    const int gen = g.generator_indices[gi];
    // first factorization gen = h * g_{base,b}: experiments in declared
    // order, subgroup elements in enumeration order
    Matrix img;
    bool found = false;
    for (std::size_t b = 0; b < params.size() && !found; ++b) {
      const int g_cb = family(base, static_cast<int>(b));
      for (int hi = 0; hi < sub.order() && !found; ++hi) {
        if (g.compose(sub.parent_index[hi], g_cb) != gen) continue;
        // the transition part is the identity in matched indicator
        // coordinates, so only the induced permutation of h remains
        img = action_matrix(induced, hi);
        found = true;
      }
    }
    if (!found)
      throw NoFactorization("generator " + std::to_string(gen) +
                            " does not factor through the base experiment's subgroup and the "
                            "transition elements");
    gen_images.push_back(std::move(img));
  }

  AbstractRep rep;
  rep.origin = AbstractRep::Origin::derived;
  rep.projective = false;
  rep.dim = n;
  rep.group = &g;
  rep.matrices = extend_from_generators(g, gen_images, n);
  require_verified(rep, tol.hom_derived, tol.unitarity);
  return rep;
}

AbstractRep build_w_explicit(const std::vector<std::pair<std::string, Matrix>>& images,
                             const std::vector<std::pair<std::string, Perm>>& generators,
                             const FiniteGroup& g, bool projective, const Tolerances& tol) {
  if (generators.size() != g.generator_indices.size())
    throw ValidationError("generator list does not match the group's generating set");
  std::vector<Matrix> gen_images(generators.size());
  int n = 0;
  for (std::size_t gi = 0; gi < generators.size(); ++gi) {
    const auto it = std::find_if(images.begin(), images.end(),
                                 [&](const auto& p) { return p.first == generators[gi].first; });
    if (it == images.end())
      throw ValidationError("no matrix supplied for generator '" + generators[gi].first + "'");
    gen_images[gi] = it->second;
    n = static_cast<int>(it->second.rows());
  }
  AbstractRep rep;
  rep.origin = AbstractRep::Origin::supplied;
  rep.projective = projective;
  rep.dim = n;
  rep.group = &g;
  rep.matrices = extend_from_generators(g, gen_images, n);
  require_verified(rep, projective ? tol.hom_explicit : tol.hom_derived, tol.unitarity);
  return rep;
}

Matrix build_T(int a, const AbstractRep& w, const Matrix& t_c, const TransitionFamily& family) {
  const Matrix& u = w.matrices[family(family.base, a)];
  return u * t_c * u.adjoint();
}

}  // namespace symq
