// Seeded sampling primitives. Every sampler is a pure function of its seed so
// experiments replay bit-for-bit.
#pragma once

#include <cstdint>
#include <random>

#include "repq/linalg.hpp"

namespace repq {

// Derives an independent stream seed from (seed, stream) via splitmix64.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic generator: mt19937_64 driven uniforms with an explicit
// Box-Muller transform, so the draw sequence does not depend on the standard
// library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                    // [0, 1)
  int uniform_int(int lo, int hi);     // inclusive bounds
  double gaussian();                   // standard normal
  Complex complex_gaussian();          // E|z|^2 = 1

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Matrix with i.i.d. standard complex gaussian entries.
Matrix gaussian_matrix(int rows, int cols, Rng& rng);

// Haar-distributed unitary via QR of a gaussian matrix with the R-diagonal
// phase correction.
Matrix haar_unitary(int n, Rng& rng);

// Uniformly random unit vector.
Vector random_unit_vector(int n, Rng& rng);

}  // namespace repq
