// Finite-dimensional C*-algebras presented as direct sums of complex matrix
// blocks, with their canonical matrix-unit basis and unitization.
#pragma once

#include <utility>
#include <vector>

#include "repq/linalg.hpp"

namespace repq {

// Shape of a multi-matrix algebra: block i is the full matrix algebra of
// size block_dim(i). Immutable after construction.
class AlgebraDescriptor {
 public:
  explicit AlgebraDescriptor(std::vector<int> block_dims);

  int block_count() const { return static_cast<int>(block_dims_.size()); }
  int block_dim(int i) const { return block_dims_.at(static_cast<size_t>(i)); }
  const std::vector<int>& block_dims() const { return block_dims_; }

  // Linear dimension, the sum of squared block sizes.
  int dim() const { return dim_; }

  // Smallest ambient Hilbert-space dimension guaranteed to leave room above
  // any cyclic representation: dim() + 1.
  int min_ambient_dim() const { return dim_ + 1; }

  // Index of the matrix unit E_{row,col} of block `block` in the canonical
  // basis order (block-major, then row-major within the block).
  int basis_index(int block, int row, int col) const;

  friend bool operator==(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
    return a.block_dims_ == b.block_dims_;
  }
  friend bool operator!=(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
    return !(a == b);
  }

 private:
  std::vector<int> block_dims_;
  std::vector<int> offsets_;
  int dim_ = 0;
};

// One element of a multi-matrix algebra: a matrix per block. Value type;
// arithmetic returns fresh elements and never mutates operands.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraDescriptor descriptor, std::vector<Matrix> blocks);

  static AlgebraElement zero(const AlgebraDescriptor& descriptor);
  static AlgebraElement unit(const AlgebraDescriptor& descriptor);
  static AlgebraElement basis_element(const AlgebraDescriptor& descriptor, int block,
                                      int row, int col);

  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  const Matrix& block(int i) const { return blocks_.at(static_cast<size_t>(i)); }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  AlgebraElement adjoint() const;

  // Coordinates in the canonical basis, ordered by basis_index.
  Vector coordinates() const;
  static AlgebraElement from_coordinates(const AlgebraDescriptor& descriptor,
                                         const Vector& coords);

  friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator-(const AlgebraElement& a);
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(Complex scale, const AlgebraElement& a);
  friend AlgebraElement operator*(const AlgebraElement& a, Complex scale);

 private:
  AlgebraDescriptor descriptor_;
  std::vector<Matrix> blocks_;
};

// C*-norm: the largest block operator norm.
double norm(const AlgebraElement& a);

// Largest entry-wise distance between two elements (diagnostic metric).
double max_entry_distance(const AlgebraElement& a, const AlgebraElement& b);

// True iff a is hermitian within tol (operator norm) and every block
// eigenvalue is >= -tol.
bool is_positive(const AlgebraElement& a, double tol = 1e-9);

// All matrix units in canonical order; size equals descriptor.dim().
std::vector<AlgebraElement> canonical_basis(const AlgebraDescriptor& descriptor);

// Descriptor of the unitization: one extra 1x1 block adjoined.
AlgebraDescriptor unitized(const AlgebraDescriptor& descriptor);

// a + lambda*1 inside the unitization: block i maps to a_i + lambda*I and the
// adjoined block carries lambda itself.
AlgebraElement embed_unitized(const AlgebraElement& a, Complex lambda);

// Inverse of embed_unitized: recovers (a, lambda) from an element of the
// unitization. Requires the last block to be 1x1.
std::pair<AlgebraElement, Complex> split_unitized(const AlgebraElement& t);

}  // namespace repq
