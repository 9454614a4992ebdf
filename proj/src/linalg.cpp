#include "repq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace repq {

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double trace_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double hermiticity_defect(const Matrix& m) {
  return operator_norm(m - m.adjoint());
}

Vector phase_fixed(const Vector& v) {
  if (v.size() == 0) return v;
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale <= 0.0) return v;
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double a = std::abs(v(k));
    if (a > 1e-12 * scale) return v * (std::conj(v(k)) / a);
  }
  return v;
}

HermitianEigen hermitian_eigen_descending(const Matrix& m) {
  HermitianEigen out;
  const Eigen::Index n = m.rows();
  if (n == 0) {
    out.values = Eigen::VectorXd(0);
    out.vectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("hermitian eigensolver failed to converge");
  }
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const Eigen::VectorXd& vals = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });
  out.values = Eigen::VectorXd(n);
  out.vectors = Matrix(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = vals(order[static_cast<size_t>(j)]);
    out.vectors.col(j) = phase_fixed(es.eigenvectors().col(order[static_cast<size_t>(j)]));
  }
  return out;
}

Matrix extend_frame(int dim, const Matrix& fixed, int count) {
  if (count < 0 || dim <= 0 || fixed.rows() != dim) {
    throw std::invalid_argument("extend_frame: inconsistent dimensions");
  }
  if (count == 0) return Matrix(dim, 0);
  Matrix built(dim, fixed.cols() + count);
  built.leftCols(fixed.cols()) = fixed;
  Eigen::Index have = fixed.cols();
  const Eigen::Index want = built.cols();
  for (double threshold : {1e-4, 1e-13}) {
    for (int k = 0; k < dim && have < want; ++k) {
      Vector w = Vector::Zero(dim);
      w(k) = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        w -= built.leftCols(have) * (built.leftCols(have).adjoint() * w);
      }
      const double nrm = w.norm();
      if (nrm >= threshold) {
        built.col(have++) = phase_fixed(w / nrm);
      }
    }
    if (have == want) break;
  }
  if (have != want) {
    throw std::invalid_argument("extend_frame: ambient dimension exhausted");
  }
  return built.rightCols(count);
}

Matrix pseudo_inverse(const Matrix& m, double rel_cutoff) {
  if (m.size() == 0) return Matrix(m.cols(), m.rows());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double cutoff = sv.size() > 0 ? rel_cutoff * sv(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) inv(k) = 1.0 / sv(k);
  }
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

int numerical_rank(const Matrix& m, double rel_cutoff) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cutoff = rel_cutoff * sv(0);
  int rank = 0;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > cutoff) ++rank;
  }
  return rank;
}

Matrix unitary_exponential(const Matrix& p, double r) {
  HermitianEigen eig = hermitian_eigen_descending(p);
  const Eigen::Index n = p.rows();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::exp(Complex(0.0, r * eig.values(k)));
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace repq
