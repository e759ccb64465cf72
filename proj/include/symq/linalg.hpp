#pragma once

#include <Eigen/Dense>
#include <complex>

namespace symq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

inline double frobenius(const Matrix& m) { return m.norm(); }

// Smallest Frobenius distance between a and e^{i theta} b over all phases,
// computed as a direct difference so near-zero results do not suffer
// cancellation.
inline double distance_up_to_phase(const Matrix& a, const Matrix& b) {
  const Complex t = (b.adjoint() * a).trace();
  if (std::abs(t) < 1e-300) return (a - b).norm();
  return (a - t / std::abs(t) * b).norm();
}

inline double distance_up_to_phase(const Vector& a, const Vector& b) {
  const Complex t = b.dot(a);  // conjugate-linear in b
  if (std::abs(t) < 1e-300) return (a - b).norm();
  return (a - t / std::abs(t) * b).norm();
}

// Multiplies by the unit phase that makes the first coordinate larger than
// `zero_tol` in magnitude real and positive. Zero vectors pass through.
inline Vector canonical_phase(Vector v, double zero_tol = 1e-12) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v[i]);
    if (mag > zero_tol) {
      v *= std::conj(v[i]) / mag;
      // the pivot coordinate is now exactly real up to roundoff; scrub it
      v[i] = Complex(std::abs(v[i]), 0.0);
      return v;
    }
  }
  return v;
}

inline bool approx_unitary(const Matrix& u, double tol) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm() <= tol;
}

}  // namespace symq
