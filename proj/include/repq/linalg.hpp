// Small dense linear-algebra helpers shared across the library.
#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace repq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Inner product linear in the first argument: <x, y> = sum_k x_k conj(y_k).
inline Complex inner(const Vector& x, const Vector& y) { return y.dot(x); }

// Largest singular value; 0 for empty matrices.
double operator_norm(const Matrix& m);

// Sum of singular values; 0 for empty matrices.
double trace_norm(const Matrix& m);

// Operator-norm distance to the adjoint, ||m - m*||.
double hermiticity_defect(const Matrix& m);

// Eigen-decomposition of a hermitian matrix with eigenvalues sorted in
// descending order (ties keep the solver's ascending-index order) and each
// eigenvector rotated so its first significant coordinate is real positive.
struct HermitianEigen {
  Eigen::VectorXd values;  // descending
  Matrix vectors;          // columns match values
};
HermitianEigen hermitian_eigen_descending(const Matrix& m);

// Rotates v by a global phase so that its first coordinate of significant
// modulus (relative threshold 1e-12) becomes real positive. Zero vectors are
// returned unchanged.
Vector phase_fixed(const Vector& v);

// Deterministically extends an orthonormal family to `count` further
// orthonormal columns, all orthogonal to the columns of `fixed`: standard
// basis vectors are Gram-Schmidt reduced (twice, for stability) in index
// order and accepted greedily. Throws std::invalid_argument if the ambient
// dimension cannot accommodate the request.
Matrix extend_frame(int dim, const Matrix& fixed, int count);

// Moore-Penrose pseudo-inverse with a relative singular-value cutoff.
Matrix pseudo_inverse(const Matrix& m, double rel_cutoff = 1e-12);

// Numerical rank with a relative singular-value cutoff.
int numerical_rank(const Matrix& m, double rel_cutoff = 1e-9);

// exp(i r p) for hermitian p, via its eigen-decomposition.
Matrix unitary_exponential(const Matrix& p, double r);

}  // namespace repq
