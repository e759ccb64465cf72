#include "symq/born.hpp"

#include <cmath>

#include "symq/errors.hpp"

namespace symq {

namespace {

double clamp_probability(double p, double band) {
  if (p < -band || p > 1.0 + band)
    throw ValidationError("probability " + std::to_string(p) + " escapes [0,1] beyond the band");
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

double transition_probability(const Vector& v, const Vector& w, const Tolerances& tol) {
  if (v.size() != w.size()) throw DimensionMismatch("states live in different dimensions");
  const double p = std::norm(v.dot(w));
  return clamp_probability(p, tol.prob_clamp);
}

TransitionMatrix transition_matrix(int a, int b, const StateTable& table, const Tolerances& tol) {
  const int na = static_cast<int>(table.states[a].size());
  const int nb = static_cast<int>(table.states[b].size());
  TransitionMatrix m;
  m.source = a;
  m.target = b;
  m.entries = RealMatrix(na, nb);
  for (int k = 0; k < na; ++k)
    for (int i = 0; i < nb; ++i)
      m.entries(k, i) =
          transition_probability(table.states[a][k].vector, table.states[b][i].vector, tol);
  return m;
}

StochasticityReport check_doubly_stochastic(const TransitionMatrix& m, double tol) {
  StochasticityReport rep;
  for (Eigen::Index k = 0; k < m.entries.rows(); ++k)
    rep.worst_row = std::max(rep.worst_row, std::abs(m.entries.row(k).sum() - 1.0));
  for (Eigen::Index i = 0; i < m.entries.cols(); ++i)
    rep.worst_col = std::max(rep.worst_col, std::abs(m.entries.col(i).sum() - 1.0));
  rep.pass = rep.worst_row <= tol && rep.worst_col <= tol;
  return rep;
}

RealVector born_with_density(const DensityMatrixT& rho, int b, const StateTable& table,
                             const Tolerances& tol) {
  const int nb = static_cast<int>(table.states[b].size());
  RealVector p(nb);
  for (int i = 0; i < nb; ++i) {
    const Vector& v = table.states[b][i].vector;
    const Complex q = (v.adjoint() * rho.matrix * v)(0, 0);
    p[i] = clamp_probability(q.real(), tol.prob_clamp);
  }
  if (std::abs(p.sum() - 1.0) > tol.stochastic)
    throw ValidationError("density-state probabilities do not sum to 1");
  return p;
}

double conditional_expectation(const Vector& v, const Matrix& t_b) {
  return (v.adjoint() * t_b * v)(0, 0).real();
}

InvarianceReport check_probability_invariance(const AbstractRep& w, const StateTable& table,
                                              double tol) {
  InvarianceReport rep;
  std::vector<const Vector*> all;
  for (const auto& row : table.states)
    for (const auto& st : row) all.push_back(&st.vector);
  for (std::size_t e = 0; e < w.matrices.size(); ++e) {
    const Matrix& u = w.matrices[e];
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j) {
        const double before = std::norm(all[i]->dot(*all[j]));
        const double after = std::norm((u * *all[i]).dot(u * *all[j]));
        const double d = std::abs(before - after);
        if (d > rep.worst) {
          rep.worst = d;
          if (d > tol) rep.bad_element = static_cast<int>(e);
        }
      }
  }
  rep.pass = rep.worst <= tol;
  return rep;
}

}  // namespace symq
