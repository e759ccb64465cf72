#include "symq/states.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "symq/errors.hpp"

namespace symq {

BaseStructure base_structure(const std::vector<ParameterMap>& params, const FiniteGroup& g,
                             int base) {
  BaseStructure out;
  out.base = base;
  out.subgroup = maximal_permissible_subgroup(params[base], g);
  out.induced = induced_action(params[base], out.subgroup);
  out.sub_pos.assign(g.order(), -1);
  for (int i = 0; i < out.subgroup.order(); ++i) out.sub_pos[out.subgroup.parent_index[i]] = i;
  return out;
}

Factorization factorize_element(int g, const FiniteGroup& group, const BaseStructure& base,
                                const TransitionFamily& family, int n_experiments) {
  for (int b = 0; b < n_experiments; ++b) {
    const int g_cb = family(base.base, b);
    for (int hi = 0; hi < base.subgroup.order(); ++hi) {
      const int h = base.subgroup.parent_index[hi];
      if (group.compose(h, g_cb) == g) return {h, b, g_cb};
    }
  }
  throw NoFactorization("element " + std::to_string(g) +
                        " is not reachable as subgroup element times transition element");
}

std::vector<Factorization> all_factorizations(int g, const FiniteGroup& group,
                                              const BaseStructure& base,
                                              const TransitionFamily& family, int n_experiments) {
  std::vector<Factorization> out;
  for (int b = 0; b < n_experiments; ++b) {
    const int g_cb = family(base.base, b);
    for (int hi = 0; hi < base.subgroup.order(); ++hi) {
      const int h = base.subgroup.parent_index[hi];
      if (group.compose(h, g_cb) == g) out.push_back({h, b, g_cb});
    }
  }
  return out;
}

const PureState& StateTable::at(int a, int k) const {
  if (a < 0 || a >= static_cast<int>(states.size()))
    throw UnknownExperiment("experiment index " + std::to_string(a) + " out of range");
  if (k < 0 || k >= static_cast<int>(states[a].size()))
    throw UnknownValue("value index " + std::to_string(k) + " out of range");
  return states[a][k];
}

StateTable build_states(const std::vector<ParameterMap>& params, const AbstractRep& w,
                        const TransitionFamily& family, int base) {
  StateTable table;
  table.base = base;
  table.dim = w.dim;
  table.states.resize(params.size());
  for (std::size_t a = 0; a < params.size(); ++a) {
    const Matrix& u = w.matrices[family(base, static_cast<int>(a))];
    table.states[a].resize(params[a].value_count());
    for (int k = 0; k < params[a].value_count(); ++k) {
      Vector v = Vector::Zero(w.dim);
      v[k] = 1.0;
      PureState st;
      st.vector = canonical_phase(u * v);
      st.experiment = static_cast<int>(a);
      st.value = k;
      table.states[a][k] = std::move(st);
    }
  }
  return table;
}

PureState state_from_question(int a, int k, const StateTable& table) { return table.at(a, k); }

std::vector<std::pair<int, int>> question_from_state(const Vector& v, const StateTable& table,
                                                     double overlap_tol) {
  std::vector<std::pair<int, int>> matches;
  for (std::size_t a = 0; a < table.states.size(); ++a)
    for (std::size_t k = 0; k < table.states[a].size(); ++k)
      if (std::abs(table.states[a][k].vector.dot(v)) > 1.0 - overlap_tol)
        matches.emplace_back(static_cast<int>(a), static_cast<int>(k));
  if (matches.empty())
    throw NotGCS("state does not match any experiment eigenstate");
  return matches;
}

std::pair<int, int> unique_question_from_state(const Vector& v, const StateTable& table,
                                               double overlap_tol) {
  const auto matches = question_from_state(v, table, overlap_tol);
  if (matches.size() > 1)
    throw AmbiguousState("state matches " + std::to_string(matches.size()) +
                         " distinct questions");
  return matches.front();
}

std::vector<Vector> gcs_orbit(const Vector& v0, const AbstractRep& w, double dedup_tol) {
  std::vector<Vector> orbit;
  for (const auto& u : w.matrices) {
    const Vector cand = canonical_phase(u * v0);
    bool fresh = true;
    for (const auto& seen : orbit)
      if (std::abs(1.0 - std::abs(seen.dot(cand))) < dedup_tol) {
        fresh = false;
        break;
      }
    if (fresh) orbit.push_back(cand);
  }
  return orbit;
}

StateAssumptionReport check_state_assumptions(const AbstractRep& w, const Vector& v0,
                                              const StateTable& table, double tol) {
  StateAssumptionReport rep;
  std::vector<Vector> images;
  images.reserve(w.matrices.size());
  for (const auto& u : w.matrices) images.push_back(canonical_phase(u * v0));
  for (std::size_t i = 0; i < images.size() && rep.injective; ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j)
      if (std::abs(1.0 - std::abs(images[i].dot(images[j]))) < tol) {
        rep.injective = false;
        rep.collide_g = static_cast<int>(i);
        rep.collide_h = static_cast<int>(j);
        break;
      }
  const auto orbit = gcs_orbit(v0, w, tol);
  rep.orbit_size = static_cast<int>(orbit.size());
  for (std::size_t a = 0; a < table.states.size() && rep.covers_eigenbasis; ++a)
    for (std::size_t k = 0; k < table.states[a].size(); ++k) {
      bool found = false;
      for (const auto& o : orbit)
        if (std::abs(1.0 - std::abs(o.dot(table.states[a][k].vector))) < tol) {
          found = true;
          break;
        }
      if (!found) {
        rep.covers_eigenbasis = false;
        rep.missing_a = static_cast<int>(a);
        rep.missing_k = static_cast<int>(k);
        break;
      }
    }
  return rep;
}

DensityMatrixT density_from_distribution(const RealVector& pi, int a, const StateTable& table,
                                         const Tolerances& tol) {
  if (pi.size() != static_cast<Eigen::Index>(table.states[a].size()))
    throw InvalidDistribution("distribution length does not match the value count");
  double sum = 0.0;
  for (Eigen::Index k = 0; k < pi.size(); ++k) {
    if (pi[k] < -1e-12) throw InvalidDistribution("negative probability");
    sum += pi[k];
  }
  if (std::abs(sum - 1.0) > 1e-12) throw InvalidDistribution("probabilities do not sum to 1");
  DensityMatrixT rho;
  rho.matrix = Matrix::Zero(table.dim, table.dim);
  for (Eigen::Index k = 0; k < pi.size(); ++k) {
    const Vector& v = table.states[a][k].vector;
    rho.matrix += pi[k] * (v * v.adjoint());
  }
  validate_density(rho, tol);
  return rho;
}

void validate_density(const DensityMatrixT& rho, const Tolerances& tol) {
  const Matrix& m = rho.matrix;
  if (frobenius(m - m.adjoint()) > tol.hermitian)
    throw ValidationError("density matrix is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > tol.trace_one || std::abs(m.trace().imag()) > tol.trace_one)
    throw ValidationError("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd)
    throw ValidationError("density matrix has a negative eigenvalue");
}

Matrix parameter_operator(int a, const std::vector<ParameterMap>& params,
                          const StateTable& table) {
  const auto& map = params[a];
  if (!map.numeric) throw MissingEigenvalues("experiment '" + map.name + "' declares no eigenvalues");
  Matrix t = Matrix::Zero(table.dim, table.dim);
  for (int k = 0; k < map.value_count(); ++k) {
    const Vector& v = table.states[a][k].vector;
    t += (*map.numeric)[k] * (v * v.adjoint());
  }
  return t;
}

namespace {

std::vector<std::vector<int>> eigenvalue_clusters(const RealVector& vals, double tol) {
  std::vector<std::vector<int>> clusters;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (!clusters.empty() && std::abs(vals[i] - vals[clusters.back().front()]) < tol)
      clusters.back().push_back(static_cast<int>(i));
    else
      clusters.push_back({static_cast<int>(i)});
  }
  return clusters;
}

}  // namespace

CommutantReport commutant_analysis(const Matrix& t, const Tolerances& tol) {
  const int n = static_cast<int>(t.rows());
  if (n > 16) throw TooLarge("commutant analysis is limited to dimension 16");
  if (frobenius(t - t.adjoint()) > tol.hermitian)
    throw ValidationError("commutant analysis requires a self-adjoint matrix");

  // null space of X -> T X - X T over the n^2-dimensional matrix space
  Matrix lhs = Matrix::Zero(n * n, n * n);
  const Matrix id = Matrix::Identity(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      for (int rr = 0; rr < n; ++rr)
        for (int cc = 0; cc < n; ++cc)
          // vec(T X - X T) with column-major vec: entry ((c*n+r),(cc*n+rr))
          lhs(c * n + r, cc * n + rr) = t(r, rr) * id(cc, c) - id(r, rr) * t(cc, c);

  Eigen::JacobiSVD<Matrix> svd(lhs, Eigen::ComputeFullV);
  const double scale = std::max(1.0, svd.singularValues().size() ? svd.singularValues()[0] : 1.0);
  CommutantReport rep;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] < 1e-8 * scale) {
      Matrix x(n, n);
      for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r) x(r, c) = svd.matrixV()(c * n + r, i);
      rep.basis.push_back(std::move(x));
    }
  }
  rep.dimension = static_cast<int>(rep.basis.size());
  rep.maximal = rep.dimension == n;

  Eigen::SelfAdjointEigenSolver<Matrix> es(t);
  const auto clusters = eigenvalue_clusters(es.eigenvalues(), tol.eigen_cluster);
  for (const auto& c : clusters) rep.multiplicities.push_back(static_cast<int>(c.size()));
  if (!rep.maximal) {
    for (const auto& c : clusters) {
      if (c.size() < 2) continue;
      // distinct weights on two eigenvectors of one degenerate eigenvalue:
      // commutes with T but separates points no function of T can separate
      const Vector v1 = es.eigenvectors().col(c[0]);
      const Vector v2 = es.eigenvectors().col(c[1]);
      rep.witness = Matrix(1.0 * (v1 * v1.adjoint()) + 2.0 * (v2 * v2.adjoint()));
      break;
    }
  }
  return rep;
}

SimultaneousBasis simultaneous_eigenbasis(const Matrix& a, const Matrix& b, double cluster_tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> ea(a);
  const auto clusters = eigenvalue_clusters(ea.eigenvalues(), cluster_tol);
  SimultaneousBasis out;
  out.basis = Matrix::Zero(a.rows(), a.cols());
  int col = 0;
  for (const auto& c : clusters) {
    Matrix block(a.rows(), c.size());
    for (std::size_t i = 0; i < c.size(); ++i) block.col(i) = ea.eigenvectors().col(c[i]);
    // diagonalize b inside the eigenspace of a
    Eigen::SelfAdjointEigenSolver<Matrix> eb(block.adjoint() * b * block);
    const Matrix refined = block * eb.eigenvectors();
    for (Eigen::Index i = 0; i < refined.cols(); ++i) out.basis.col(col++) = refined.col(i);
  }
  for (Eigen::Index i = 0; i < out.basis.cols(); ++i) {
    const Vector v = out.basis.col(i);
    const double ra = (a * v - (v.dot(a * v)) * v).norm();
    const double rb = (b * v - (v.dot(b * v)) * v).norm();
    out.worst_residual = std::max({out.worst_residual, ra, rb});
  }
  return out;
}

}  // namespace symq
