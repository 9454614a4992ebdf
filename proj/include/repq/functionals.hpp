// Linear functionals on a multi-matrix algebra, carried by one density
// matrix per block: phi(a) = sum_i tr(rho_i a_i). States, quasi-states, the
// trace-norm metric, Jordan decomposition, and the unitization
// correspondence between quasi-states and states of the unitized algebra.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "repq/algebra.hpp"

namespace repq {

enum class FunctionalClass { State, QuasiState, Positive, Hermitian, General };
enum class SampleKind { State, QuasiState };

class Functional {
 public:
  Functional(AlgebraDescriptor descriptor, std::vector<Matrix> density_blocks);

  static Functional zero(const AlgebraDescriptor& descriptor);

  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  const Matrix& density_block(int i) const { return blocks_.at(static_cast<size_t>(i)); }
  const std::vector<Matrix>& density_blocks() const { return blocks_; }

  friend Functional operator+(const Functional& a, const Functional& b);
  friend Functional operator-(const Functional& a, const Functional& b);
  friend Functional operator*(double scale, const Functional& a);

 private:
  AlgebraDescriptor descriptor_;
  std::vector<Matrix> blocks_;
};

// phi(a); descriptors must match.
Complex pair(const Functional& phi, const AlgebraElement& a);

// Dual norm of a hermitian functional: the sum over blocks of the absolute
// eigenvalue sums of the densities. Rejects non-hermitian densities.
double functional_norm(const Functional& phi, double herm_tol = 1e-10);

// Finest matching class in {State, QuasiState, Positive, Hermitian, General}.
FunctionalClass classify(const Functional& phi, double tol = 1e-9);

bool is_quasi_state(const Functional& phi, double tol = 1e-9);

// Seeded sampler. States have trace exactly 1; quasi-states draw their total
// trace uniformly from [0, 1). `rank` caps the total density rank (allocated
// greedily across blocks); by default every block is full rank.
Functional random_functional(const AlgebraDescriptor& descriptor, std::uint64_t seed,
                             SampleKind kind, std::optional<int> rank = std::nullopt);

// Seeded hermitian (generally non-positive) functional.
Functional random_hermitian_functional(const AlgebraDescriptor& descriptor,
                                       std::uint64_t seed);

// Splits a hermitian functional into its positive and negative parts by
// blockwise spectral splitting: phi = plus - minus with orthogonal densities
// and functional_norm(phi) = functional_norm(plus) + functional_norm(minus).
std::pair<Functional, Functional> jordan_decompose(const Functional& phi,
                                                   double herm_tol = 1e-10);

// Trace-norm distance: sum over blocks of the trace norms of the density
// differences. This is the dual-norm metric on functionals.
double qstate_distance(const Functional& phi, const Functional& psi);

// Sends a quasi-state of A to the state of the unitization extending it with
// total weight 1: the adjoined 1x1 block carries 1 - ||phi||.
Functional unitize_functional(const Functional& phi, double tol = 1e-9);

// Inverse direction: restriction of a functional on the unitization back to
// A (drops the adjoined block).
Functional restrict_unitized(const Functional& psi);

// Affine complex function on the quasi-state space, evaluated only after a
// quasi-state membership check.
class AffineFunctionOnQ {
 public:
  using Evaluator = std::function<Complex(const Functional&)>;

  AffineFunctionOnQ(AlgebraDescriptor descriptor, Evaluator evaluator);

  const AlgebraDescriptor& descriptor() const { return descriptor_; }

  // Raw evaluation without the membership check; prefer evaluate_affine.
  Complex unchecked(const Functional& phi) const { return evaluator_(phi); }

 private:
  AlgebraDescriptor descriptor_;
  Evaluator evaluator_;
};

// Evaluates f on phi after checking phi is a quasi-state (throws otherwise).
Complex evaluate_affine(const AffineFunctionOnQ& f, const Functional& phi,
                        double tol = 1e-9);

// The affine function phi -> phi(a) induced by an algebra element.
AffineFunctionOnQ affine_from_element(const AlgebraElement& a);

// Seeded generic (non-hermitian) algebra element with gaussian entries.
AlgebraElement random_element(const AlgebraDescriptor& descriptor, std::uint64_t seed);

}  // namespace repq
