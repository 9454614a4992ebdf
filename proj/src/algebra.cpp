#include "repq/algebra.hpp"

#include <stdexcept>

namespace repq {

namespace {

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.descriptor() != b.descriptor()) {
    throw std::invalid_argument("algebra elements have mismatched descriptors");
  }
}

}  // namespace

AlgebraDescriptor::AlgebraDescriptor(std::vector<int> block_dims)
    : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) {
    throw std::invalid_argument("descriptor needs at least one block");
  }
  offsets_.reserve(block_dims_.size());
  for (int n : block_dims_) {
    if (n < 1) throw std::invalid_argument("block dimensions must be >= 1");
    offsets_.push_back(dim_);
    dim_ += n * n;
  }
}

int AlgebraDescriptor::basis_index(int block, int row, int col) const {
  const int n = block_dim(block);
  if (row < 0 || row >= n || col < 0 || col >= n) {
    throw std::out_of_range("matrix-unit index outside block");
  }
  return offsets_[static_cast<size_t>(block)] + row * n + col;
}

AlgebraElement::AlgebraElement(AlgebraDescriptor descriptor, std::vector<Matrix> blocks)
    : descriptor_(std::move(descriptor)), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != descriptor_.block_count()) {
    throw std::invalid_argument("element block count does not match descriptor");
  }
  for (int i = 0; i < descriptor_.block_count(); ++i) {
    const int n = descriptor_.block_dim(i);
    if (blocks_[static_cast<size_t>(i)].rows() != n ||
        blocks_[static_cast<size_t>(i)].cols() != n) {
      throw std::invalid_argument("element block shape does not match descriptor");
    }
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& descriptor) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(descriptor.block_count()));
  for (int i = 0; i < descriptor.block_count(); ++i) {
    blocks.push_back(Matrix::Zero(descriptor.block_dim(i), descriptor.block_dim(i)));
  }
  return AlgebraElement(descriptor, std::move(blocks));
}

AlgebraElement AlgebraElement::unit(const AlgebraDescriptor& descriptor) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(descriptor.block_count()));
  for (int i = 0; i < descriptor.block_count(); ++i) {
    blocks.push_back(Matrix::Identity(descriptor.block_dim(i), descriptor.block_dim(i)));
  }
  return AlgebraElement(descriptor, std::move(blocks));
}

AlgebraElement AlgebraElement::basis_element(const AlgebraDescriptor& descriptor,
                                             int block, int row, int col) {
  descriptor.basis_index(block, row, col);  // validates indices
  AlgebraElement e = zero(descriptor);
  e.blocks_[static_cast<size_t>(block)](row, col) = 1.0;
  return e;
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<Matrix> blocks;
  blocks.reserve(blocks_.size());
  for (const Matrix& b : blocks_) blocks.push_back(b.adjoint());
  return AlgebraElement(descriptor_, std::move(blocks));
}

Vector AlgebraElement::coordinates() const {
  Vector coords(descriptor_.dim());
  for (int i = 0; i < descriptor_.block_count(); ++i) {
    const int n = descriptor_.block_dim(i);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        coords(descriptor_.basis_index(i, p, q)) = blocks_[static_cast<size_t>(i)](p, q);
      }
    }
  }
  return coords;
}

AlgebraElement AlgebraElement::from_coordinates(const AlgebraDescriptor& descriptor,
                                                const Vector& coords) {
  if (coords.size() != descriptor.dim()) {
    throw std::invalid_argument("coordinate vector length does not match descriptor");
  }
  AlgebraElement e = zero(descriptor);
  for (int i = 0; i < descriptor.block_count(); ++i) {
    const int n = descriptor.block_dim(i);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        e.blocks_[static_cast<size_t>(i)](p, q) = coords(descriptor.basis_index(i, p, q));
      }
    }
  }
  return e;
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (size_t i = 0; i < a.blocks_.size(); ++i) blocks.push_back(a.blocks_[i] + b.blocks_[i]);
  return AlgebraElement(a.descriptor_, std::move(blocks));
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (size_t i = 0; i < a.blocks_.size(); ++i) blocks.push_back(a.blocks_[i] - b.blocks_[i]);
  return AlgebraElement(a.descriptor_, std::move(blocks));
}

AlgebraElement operator-(const AlgebraElement& a) { return Complex(-1.0, 0.0) * a; }

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (size_t i = 0; i < a.blocks_.size(); ++i) blocks.push_back(a.blocks_[i] * b.blocks_[i]);
  return AlgebraElement(a.descriptor_, std::move(blocks));
}

AlgebraElement operator*(Complex scale, const AlgebraElement& a) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (const Matrix& b : a.blocks_) blocks.push_back(scale * b);
  return AlgebraElement(a.descriptor_, std::move(blocks));
}

AlgebraElement operator*(const AlgebraElement& a, Complex scale) { return scale * a; }

double norm(const AlgebraElement& a) {
  double best = 0.0;
  for (const Matrix& b : a.blocks()) best = std::max(best, operator_norm(b));
  return best;
}

double max_entry_distance(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b);
  double best = 0.0;
  for (size_t i = 0; i < a.blocks().size(); ++i) {
    const Matrix diff = a.blocks()[i] - b.blocks()[i];
    if (diff.size() > 0) best = std::max(best, diff.cwiseAbs().maxCoeff());
  }
  return best;
}

bool is_positive(const AlgebraElement& a, double tol) {
  for (const Matrix& b : a.blocks()) {
    if (hermiticity_defect(b) > tol) return false;
  }
  for (const Matrix& b : a.blocks()) {
    const HermitianEigen eig = hermitian_eigen_descending(b);
    if (eig.values.size() > 0 && eig.values.minCoeff() < -tol) return false;
  }
  return true;
}

std::vector<AlgebraElement> canonical_basis(const AlgebraDescriptor& descriptor) {
  std::vector<AlgebraElement> basis;
  basis.reserve(static_cast<size_t>(descriptor.dim()));
  for (int i = 0; i < descriptor.block_count(); ++i) {
    const int n = descriptor.block_dim(i);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        basis.push_back(AlgebraElement::basis_element(descriptor, i, p, q));
      }
    }
  }
  return basis;
}

AlgebraDescriptor unitized(const AlgebraDescriptor& descriptor) {
  std::vector<int> dims = descriptor.block_dims();
  dims.push_back(1);
  return AlgebraDescriptor(std::move(dims));
}

AlgebraElement embed_unitized(const AlgebraElement& a, Complex lambda) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks().size() + 1);
  for (const Matrix& b : a.blocks()) {
    blocks.push_back(b + lambda * Matrix::Identity(b.rows(), b.cols()));
  }
  blocks.push_back(lambda * Matrix::Identity(1, 1));
  return AlgebraElement(unitized(a.descriptor()), std::move(blocks));
}

std::pair<AlgebraElement, Complex> split_unitized(const AlgebraElement& t) {
  const AlgebraDescriptor& big = t.descriptor();
  if (big.block_count() < 2 || big.block_dim(big.block_count() - 1) != 1) {
    throw std::invalid_argument("split_unitized expects a trailing 1x1 block");
  }
  const Complex lambda = t.block(big.block_count() - 1)(0, 0);
  std::vector<int> dims(big.block_dims().begin(), big.block_dims().end() - 1);
  AlgebraDescriptor small(std::move(dims));
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(small.block_count()));
  for (int i = 0; i < small.block_count(); ++i) {
    blocks.push_back(t.block(i) - lambda * Matrix::Identity(small.block_dim(i), small.block_dim(i)));
  }
  return {AlgebraElement(std::move(small), std::move(blocks)), lambda};
}

}  // namespace repq
