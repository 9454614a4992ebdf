#include "repq/gns.hpp"

#include <cmath>
#include <stdexcept>

namespace repq {

namespace {

// Gram matrix of the canonical basis under (a, b) -> phi(b* a). For matrix
// units this is block diagonal: G[(i,p,q), (i,p,s)] = rho_i(s, q).
Matrix gram_matrix(const Functional& phi) {
  const AlgebraDescriptor& desc = phi.descriptor();
  Matrix g = Matrix::Zero(desc.dim(), desc.dim());
  for (int i = 0; i < desc.block_count(); ++i) {
    const int n = desc.block_dim(i);
    const Matrix& rho = phi.density_block(i);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        for (int s = 0; s < n; ++s) {
          g(desc.basis_index(i, p, q), desc.basis_index(i, p, s)) = rho(s, q);
        }
      }
    }
  }
  return g;
}

// Left multiplication by the matrix unit E_pq of block i, in basis
// coordinates: E_pq E_rs = delta_{qr} E_ps within the block.
Matrix left_multiplier(const AlgebraDescriptor& desc, int block, int p, int q) {
  Matrix l = Matrix::Zero(desc.dim(), desc.dim());
  const int n = desc.block_dim(block);
  for (int s = 0; s < n; ++s) {
    l(desc.basis_index(block, p, s), desc.basis_index(block, q, s)) = 1.0;
  }
  return l;
}

}  // namespace

GnsTriple gns(const Functional& phi, double rank_tol) {
  const FunctionalClass cls = classify(phi, 1e-9);
  if (cls == FunctionalClass::General || cls == FunctionalClass::Hermitian) {
    throw std::invalid_argument("gns requires a positive functional");
  }
  const AlgebraDescriptor& desc = phi.descriptor();
  const int dim = desc.dim();

  GnsTriple out{desc, 0, {}, Vector(0), Matrix(0, dim)};
  const Matrix g = gram_matrix(phi);
  const HermitianEigen eig = hermitian_eigen_descending(g);
  const double top = eig.values.size() > 0 ? eig.values(0) : 0.0;
  if (top <= 0.0) {
    out.rep_matrices.assign(static_cast<size_t>(dim), Matrix(0, 0));
    return out;
  }
  int kept = 0;
  while (kept < dim && eig.values(kept) > rank_tol * top) ++kept;

  Eigen::VectorXd roots(kept);
  for (int k = 0; k < kept; ++k) roots(k) = std::sqrt(eig.values(k));
  const Matrix v = eig.vectors.leftCols(kept);
  // Coordinates of basis classes: column a holds the class of basis element
  // a in the orthonormal quotient frame.
  const Matrix classes = roots.asDiagonal() * v.adjoint();
  const Matrix classes_pinv = v * roots.cwiseInverse().asDiagonal();

  out.space_dim = kept;
  out.class_matrix = classes;
  out.rep_matrices.reserve(static_cast<size_t>(dim));
  for (int i = 0; i < desc.block_count(); ++i) {
    const int n = desc.block_dim(i);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        out.rep_matrices.push_back(classes * left_multiplier(desc, i, p, q) * classes_pinv);
      }
    }
  }
  out.cyclic_vector = classes * AlgebraElement::unit(desc).coordinates();
  return out;
}

GnsValidation validate_gns(const GnsTriple& triple, const Functional& phi, double tol) {
  const AlgebraDescriptor& desc = triple.descriptor;
  if (desc != phi.descriptor()) {
    throw std::invalid_argument("validate_gns: descriptor mismatch");
  }
  const int dim = desc.dim();
  if (static_cast<int>(triple.rep_matrices.size()) != dim) {
    throw std::invalid_argument("validate_gns: wrong number of representation matrices");
  }
  GnsValidation v;
  const std::vector<AlgebraElement> basis = canonical_basis(desc);
  const int m = triple.space_dim;

  // Multiplicativity and adjoint compatibility over all basis pairs.
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const AlgebraElement prod = basis[static_cast<size_t>(a)] * basis[static_cast<size_t>(b)];
      const Vector coords = prod.coordinates();
      Matrix expected = Matrix::Zero(m, m);
      for (int c = 0; c < dim; ++c) {
        if (coords(c) != Complex(0.0, 0.0)) {
          expected += coords(c) * triple.rep_matrices[static_cast<size_t>(c)];
        }
      }
      const Matrix got = triple.rep_matrices[static_cast<size_t>(a)] *
                         triple.rep_matrices[static_cast<size_t>(b)];
      v.multiplicativity_defect = std::max(v.multiplicativity_defect,
                                           operator_norm(got - expected));
    }
    const Vector adj_coords = basis[static_cast<size_t>(a)].adjoint().coordinates();
    Matrix adj_expected = Matrix::Zero(m, m);
    for (int c = 0; c < dim; ++c) {
      if (adj_coords(c) != Complex(0.0, 0.0)) {
        adj_expected += adj_coords(c) * triple.rep_matrices[static_cast<size_t>(c)];
      }
    }
    v.adjoint_defect = std::max(
        v.adjoint_defect,
        operator_norm(triple.rep_matrices[static_cast<size_t>(a)].adjoint() - adj_expected));
  }

  // Reproduction of phi and the cyclic-vector norm.
  Matrix orbit(m, dim);
  for (int a = 0; a < dim; ++a) {
    const Vector img = triple.rep_matrices[static_cast<size_t>(a)] * triple.cyclic_vector;
    orbit.col(a) = img;
    v.reproduction_defect =
        std::max(v.reproduction_defect,
                 std::abs(inner(img, triple.cyclic_vector) - pair(phi, basis[static_cast<size_t>(a)])));
  }
  v.norm_defect = std::abs(triple.cyclic_vector.squaredNorm() - functional_norm(phi));
  v.cyclic_rank = numerical_rank(orbit);

  v.pass = v.multiplicativity_defect <= tol && v.adjoint_defect <= tol &&
           v.reproduction_defect <= tol && v.norm_defect <= tol && v.cyclic_rank == m;
  return v;
}

}  // namespace repq
