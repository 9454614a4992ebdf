#include "repq/functionals.hpp"

#include <cmath>
#include <stdexcept>

#include "repq/random.hpp"

namespace repq {

namespace {

constexpr std::uint64_t kFunctionalStream = 0x66756e63ULL;  // sampler domain tags
constexpr std::uint64_t kHermitianStream = 0x6865726dULL;
constexpr std::uint64_t kElementStream = 0x656c656dULL;

void require_same_shape(const Functional& a, const Functional& b) {
  if (a.descriptor() != b.descriptor()) {
    throw std::invalid_argument("functionals have mismatched descriptors");
  }
}

double max_hermiticity_defect(const Functional& phi) {
  double d = 0.0;
  for (const Matrix& b : phi.density_blocks()) d = std::max(d, hermiticity_defect(b));
  return d;
}

}  // namespace

Functional::Functional(AlgebraDescriptor descriptor, std::vector<Matrix> density_blocks)
    : descriptor_(std::move(descriptor)), blocks_(std::move(density_blocks)) {
  if (static_cast<int>(blocks_.size()) != descriptor_.block_count()) {
    throw std::invalid_argument("density block count does not match descriptor");
  }
  for (int i = 0; i < descriptor_.block_count(); ++i) {
    const int n = descriptor_.block_dim(i);
    if (blocks_[static_cast<size_t>(i)].rows() != n ||
        blocks_[static_cast<size_t>(i)].cols() != n) {
      throw std::invalid_argument("density block shape does not match descriptor");
    }
  }
}

Functional Functional::zero(const AlgebraDescriptor& descriptor) {
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(descriptor.block_count()));
  for (int i = 0; i < descriptor.block_count(); ++i) {
    blocks.push_back(Matrix::Zero(descriptor.block_dim(i), descriptor.block_dim(i)));
  }
  return Functional(descriptor, std::move(blocks));
}

Functional operator+(const Functional& a, const Functional& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (size_t i = 0; i < a.blocks_.size(); ++i) blocks.push_back(a.blocks_[i] + b.blocks_[i]);
  return Functional(a.descriptor_, std::move(blocks));
}

Functional operator-(const Functional& a, const Functional& b) {
  require_same_shape(a, b);
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (size_t i = 0; i < a.blocks_.size(); ++i) blocks.push_back(a.blocks_[i] - b.blocks_[i]);
  return Functional(a.descriptor_, std::move(blocks));
}

Functional operator*(double scale, const Functional& a) {
  std::vector<Matrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (const Matrix& b : a.blocks_) blocks.push_back(scale * b);
  return Functional(a.descriptor_, std::move(blocks));
}

Complex pair(const Functional& phi, const AlgebraElement& a) {
  if (phi.descriptor() != a.descriptor()) {
    throw std::invalid_argument("pair: functional and element descriptors differ");
  }
  Complex value = 0.0;
  for (int i = 0; i < phi.descriptor().block_count(); ++i) {
    value += (phi.density_block(i) * a.block(i)).trace();
  }
  return value;
}

double functional_norm(const Functional& phi, double herm_tol) {
  if (max_hermiticity_defect(phi) > herm_tol) {
    throw std::invalid_argument("functional_norm requires hermitian densities");
  }
  double total = 0.0;
  for (const Matrix& b : phi.density_blocks()) {
    const HermitianEigen eig = hermitian_eigen_descending(b);
    total += eig.values.cwiseAbs().sum();
  }
  return total;
}

FunctionalClass classify(const Functional& phi, double tol) {
  if (max_hermiticity_defect(phi) > tol) return FunctionalClass::General;
  double min_eig = 0.0;
  double trace = 0.0;
  for (const Matrix& b : phi.density_blocks()) {
    const HermitianEigen eig = hermitian_eigen_descending(b);
    if (eig.values.size() > 0) min_eig = std::min(min_eig, eig.values.minCoeff());
    trace += b.trace().real();
  }
  if (min_eig < -tol) return FunctionalClass::Hermitian;
  if (std::abs(trace - 1.0) <= tol) return FunctionalClass::State;
  if (trace <= 1.0 + tol) return FunctionalClass::QuasiState;
  return FunctionalClass::Positive;
}

bool is_quasi_state(const Functional& phi, double tol) {
  const FunctionalClass c = classify(phi, tol);
  return c == FunctionalClass::State || c == FunctionalClass::QuasiState;
}

Functional random_functional(const AlgebraDescriptor& descriptor, std::uint64_t seed,
                             SampleKind kind, std::optional<int> rank) {
  int max_rank = 0;
  for (int n : descriptor.block_dims()) max_rank += n;
  const int want = rank.value_or(max_rank);
  if (want < 0 || want > max_rank) {
    throw std::invalid_argument("random_functional: rank outside [0, sum of block dims]");
  }
  if (kind == SampleKind::State && want == 0) {
    throw std::invalid_argument("random_functional: a state cannot have rank 0");
  }
  Rng rng(mix_seed(seed, kFunctionalStream));
  // Draw protocol (fixed for reproducibility): target trace first, then the
  // block factors in block order.
  const double target = kind == SampleKind::State ? 1.0 : rng.uniform();
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(descriptor.block_count()));
  int remaining = want;
  double trace = 0.0;
  for (int i = 0; i < descriptor.block_count(); ++i) {
    const int n = descriptor.block_dim(i);
    const int r = std::min(n, remaining);
    remaining -= r;
    if (r == 0) {
      blocks.push_back(Matrix::Zero(n, n));
      continue;
    }
    const Matrix g = gaussian_matrix(n, r, rng);
    Matrix rho = g * g.adjoint();
    trace += rho.trace().real();
    blocks.push_back(std::move(rho));
  }
  if (trace > 0.0) {
    const double scale = target / trace;
    for (Matrix& b : blocks) b *= scale;
  }
  return Functional(descriptor, std::move(blocks));
}

Functional random_hermitian_functional(const AlgebraDescriptor& descriptor,
                                       std::uint64_t seed) {
  Rng rng(mix_seed(seed, kHermitianStream));
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(descriptor.block_count()));
  for (int i = 0; i < descriptor.block_count(); ++i) {
    const int n = descriptor.block_dim(i);
    const Matrix g = gaussian_matrix(n, n, rng);
    blocks.push_back(0.5 * (g + g.adjoint()));
  }
  return Functional(descriptor, std::move(blocks));
}

std::pair<Functional, Functional> jordan_decompose(const Functional& phi, double herm_tol) {
  if (max_hermiticity_defect(phi) > herm_tol) {
    throw std::invalid_argument("jordan_decompose requires hermitian densities");
  }
  std::vector<Matrix> plus, minus;
  plus.reserve(phi.density_blocks().size());
  minus.reserve(phi.density_blocks().size());
  for (const Matrix& b : phi.density_blocks()) {
    const HermitianEigen eig = hermitian_eigen_descending(b);
    Matrix p = Matrix::Zero(b.rows(), b.cols());
    Matrix m = Matrix::Zero(b.rows(), b.cols());
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      const Vector v = eig.vectors.col(k);
      const double lambda = eig.values(k);
      if (lambda > 0.0) {
        p += lambda * (v * v.adjoint());
      } else if (lambda < 0.0) {
        m += (-lambda) * (v * v.adjoint());
      }
    }
    plus.push_back(std::move(p));
    minus.push_back(std::move(m));
  }
  return {Functional(phi.descriptor(), std::move(plus)),
          Functional(phi.descriptor(), std::move(minus))};
}

double qstate_distance(const Functional& phi, const Functional& psi) {
  require_same_shape(phi, psi);
  double total = 0.0;
  for (size_t i = 0; i < phi.density_blocks().size(); ++i) {
    total += trace_norm(phi.density_blocks()[i] - psi.density_blocks()[i]);
  }
  return total;
}

Functional unitize_functional(const Functional& phi, double tol) {
  if (!is_quasi_state(phi, tol)) {
    throw std::invalid_argument("unitize_functional expects a quasi-state");
  }
  double trace = 0.0;
  for (const Matrix& b : phi.density_blocks()) trace += b.trace().real();
  std::vector<Matrix> blocks = phi.density_blocks();
  Matrix tail(1, 1);
  tail(0, 0) = std::max(0.0, 1.0 - trace);
  blocks.push_back(std::move(tail));
  return Functional(unitized(phi.descriptor()), std::move(blocks));
}

Functional restrict_unitized(const Functional& psi) {
  const AlgebraDescriptor& big = psi.descriptor();
  if (big.block_count() < 2 || big.block_dim(big.block_count() - 1) != 1) {
    throw std::invalid_argument("restrict_unitized expects a trailing 1x1 block");
  }
  std::vector<int> dims(big.block_dims().begin(), big.block_dims().end() - 1);
  std::vector<Matrix> blocks(psi.density_blocks().begin(), psi.density_blocks().end() - 1);
  return Functional(AlgebraDescriptor(std::move(dims)), std::move(blocks));
}

AffineFunctionOnQ::AffineFunctionOnQ(AlgebraDescriptor descriptor, Evaluator evaluator)
    : descriptor_(std::move(descriptor)), evaluator_(std::move(evaluator)) {
  if (!evaluator_) throw std::invalid_argument("affine function needs an evaluator");
}

Complex evaluate_affine(const AffineFunctionOnQ& f, const Functional& phi, double tol) {
  if (f.descriptor() != phi.descriptor()) {
    throw std::invalid_argument("evaluate_affine: descriptor mismatch");
  }
  if (!is_quasi_state(phi, tol)) {
    throw std::invalid_argument("evaluate_affine: argument is not a quasi-state");
  }
  return f.unchecked(phi);
}

AffineFunctionOnQ affine_from_element(const AlgebraElement& a) {
  return AffineFunctionOnQ(a.descriptor(),
                           [a](const Functional& phi) { return pair(phi, a); });
}

AlgebraElement random_element(const AlgebraDescriptor& descriptor, std::uint64_t seed) {
  Rng rng(mix_seed(seed, kElementStream));
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(descriptor.block_count()));
  for (int i = 0; i < descriptor.block_count(); ++i) {
    const int n = descriptor.block_dim(i);
    blocks.push_back(gaussian_matrix(n, n, rng));
  }
  return AlgebraElement(descriptor, std::move(blocks));
}

}  // namespace repq
