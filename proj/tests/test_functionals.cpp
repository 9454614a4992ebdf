#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "repq/functionals.hpp"
#include "repq/linalg.hpp"
#include "repq/random.hpp"

using namespace repq;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Matrix m1(Complex a) {
  Matrix m(1, 1);
  m << a;
  return m;
}

const AlgebraDescriptor kDesc({2, 1});

}  // namespace

TEST_SUITE("functionals") {

TEST_CASE("pairing against matrix units reads density entries transposed") {
  const Functional phi(kDesc, {m2(0.5, Complex(0.1, 0.05), Complex(0.2, -0.3), 0.25),
                               m1(0.7)});
  // pair(phi, E_pq) equals density(q, p).
  CHECK(pair(phi, AlgebraElement::basis_element(kDesc, 0, 0, 0)) == Complex(0.5, 0));
  CHECK(pair(phi, AlgebraElement::basis_element(kDesc, 0, 0, 1)) == Complex(0.2, -0.3));
  CHECK(pair(phi, AlgebraElement::basis_element(kDesc, 0, 1, 0)) == Complex(0.1, 0.05));
  CHECK(pair(phi, AlgebraElement::basis_element(kDesc, 1, 0, 0)) == Complex(0.7, 0));
  // Pairing with the unit sums the block traces.
  CHECK(std::abs(pair(phi, AlgebraElement::unit(kDesc)) - Complex(1.45, 0)) <= 1e-15);
  // Linearity in the element slot.
  const AlgebraElement a = random_element(kDesc, 5);
  const AlgebraElement b = random_element(kDesc, 6);
  CHECK(std::abs(pair(phi, a + b) - pair(phi, a) - pair(phi, b)) <= 1e-12);
}

TEST_CASE("functional norm sums absolute eigenvalues across blocks") {
  const Functional phi(kDesc, {m2(0.5, 0, 0, -0.25), m1(0.25)});
  CHECK(functional_norm(phi) == doctest::Approx(1.0).epsilon(1e-14));
  // Off-diagonal hermitian block: eigenvalues +-0.5.
  const Functional psi(kDesc, {m2(0, 0.5, 0.5, 0), m1(0)});
  CHECK(functional_norm(psi) == doctest::Approx(1.0).epsilon(1e-12));
  // Non-hermitian densities are rejected.
  const Functional bad(kDesc, {m2(0, 1, 0, 0), m1(0)});
  CHECK_THROWS_AS(functional_norm(bad), std::invalid_argument);
  // Cross-check against Jacobi-sweep eigenvalues.
  for (int j = 0; j < 20; ++j) {
    const Functional h = random_hermitian_functional(kDesc, 50 + static_cast<std::uint64_t>(j));
    double reference = 0.0;
    for (const Matrix& b : h.density_blocks()) reference += oracle::hermitian_trace_norm(b);
    CHECK(std::abs(functional_norm(h) - reference) <= 1e-10 * (1.0 + reference));
  }
}

TEST_CASE("classification distinguishes the nested functional classes") {
  CHECK(classify(Functional(kDesc, {m2(0.5, 0, 0, 0.25), m1(0.25)})) ==
        FunctionalClass::State);
  CHECK(classify(Functional(kDesc, {m2(0.25, 0, 0, 0.125), m1(0.125)})) ==
        FunctionalClass::QuasiState);
  CHECK(classify(Functional(kDesc, {m2(1.0, 0, 0, 0.5), m1(0.3)})) ==
        FunctionalClass::Positive);
  CHECK(classify(Functional(kDesc, {m2(0.5, 0, 0, -0.25), m1(0.25)})) ==
        FunctionalClass::Hermitian);
  CHECK(classify(Functional(kDesc, {m2(0, 1, 0, 0), m1(0)})) ==
        FunctionalClass::General);
  CHECK(classify(Functional::zero(kDesc)) == FunctionalClass::QuasiState);
  CHECK(is_quasi_state(Functional::zero(kDesc)));
  CHECK_FALSE(is_quasi_state(Functional(kDesc, {m2(1.0, 0, 0, 0.5), m1(0.3)})));
}

TEST_CASE("seeded functional sampler honors class, trace, and rank requests") {
  for (int j = 0; j < 10; ++j) {
    const std::uint64_t seed = 70 + static_cast<std::uint64_t>(j);
    const Functional state = random_functional(kDesc, seed, SampleKind::State);
    CHECK(classify(state) == FunctionalClass::State);
    CHECK(functional_norm(state) == doctest::Approx(1.0).epsilon(1e-12));
    const Functional quasi = random_functional(kDesc, seed, SampleKind::QuasiState);
    CHECK(classify(quasi) == FunctionalClass::QuasiState);
    CHECK(functional_norm(quasi) < 1.0);
  }
  // Rank request: greedy split across blocks, largest block first.
  const Functional rank1 = random_functional(kDesc, 9, SampleKind::State, 1);
  CHECK(numerical_rank(rank1.density_block(0)) == 1);
  CHECK(numerical_rank(rank1.density_block(1)) == 0);
  const Functional rank3 = random_functional(kDesc, 9, SampleKind::State, 3);
  CHECK(numerical_rank(rank3.density_block(0)) == 2);
  CHECK(numerical_rank(rank3.density_block(1)) == 1);
  // Determinism: identical seeds reproduce the functional bitwise.
  const Functional again = random_functional(kDesc, 9, SampleKind::State, 3);
  CHECK(qstate_distance(rank3, again) == 0.0);
}

TEST_CASE("hermitian split yields orthogonal positive parts") {
  const Functional phi(kDesc, {m2(0.5, 0, 0, -0.25), m1(-0.3)});
  const auto [plus, minus] = jordan_decompose(phi);
  CHECK(oracle::max_abs_difference(plus.density_block(0), m2(0.5, 0, 0, 0)) <= 1e-14);
  CHECK(oracle::max_abs_difference(minus.density_block(0), m2(0, 0, 0, 0.25)) <= 1e-14);
  CHECK(oracle::max_abs_difference(minus.density_block(1), m1(0.3)) <= 1e-14);
  CHECK(functional_norm(phi) ==
        doctest::Approx(functional_norm(plus) + functional_norm(minus)).epsilon(1e-12));

  // Off-diagonal case: eigenvectors (1, +-1)/sqrt(2).
  const Functional off(kDesc, {m2(0, 0.5, 0.5, 0), m1(0)});
  const auto [op, om] = jordan_decompose(off);
  CHECK(oracle::max_abs_difference(op.density_block(0), m2(0.25, 0.25, 0.25, 0.25)) <= 1e-12);
  CHECK(oracle::max_abs_difference(om.density_block(0), m2(0.25, -0.25, -0.25, 0.25)) <= 1e-12);

  for (int j = 0; j < 30; ++j) {
    const Functional h = random_hermitian_functional(kDesc, 400 + static_cast<std::uint64_t>(j));
    const auto [p, m] = jordan_decompose(h);
    CHECK(classify(p, 1e-10) != FunctionalClass::Hermitian);
    CHECK(classify(p, 1e-10) != FunctionalClass::General);
    CHECK(qstate_distance(p - m, h) <= 1e-12);
    CHECK(std::abs(functional_norm(h) - functional_norm(p) - functional_norm(m)) <= 1e-12);
  }
}

TEST_CASE("distance is a metric computed blockwise in trace norm") {
  const Functional phi(kDesc, {m2(0.5, 0, 0, 0.25), m1(0.25)});
  const Functional psi(kDesc, {m2(0.25, 0, 0, 0.25), m1(0.5)});
  CHECK(qstate_distance(phi, psi) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(qstate_distance(phi, phi) == 0.0);
  for (int j = 0; j < 20; ++j) {
    const Functional a = random_hermitian_functional(kDesc, 500 + static_cast<std::uint64_t>(j));
    const Functional b = random_hermitian_functional(kDesc, 600 + static_cast<std::uint64_t>(j));
    const Functional c = random_hermitian_functional(kDesc, 700 + static_cast<std::uint64_t>(j));
    CHECK(std::abs(qstate_distance(a, b) - qstate_distance(b, a)) <= 1e-13);
    CHECK(qstate_distance(a, c) <= qstate_distance(a, b) + qstate_distance(b, c) + 1e-12);
    double reference = 0.0;
    for (int i = 0; i < kDesc.block_count(); ++i) {
      reference += oracle::hermitian_trace_norm(a.density_block(i) - b.density_block(i));
    }
    CHECK(std::abs(qstate_distance(a, b) - reference) <= 1e-10 * (1.0 + reference));
  }
}

TEST_CASE("unitization carries quasi-states to states and back") {
  const Functional phi(kDesc, {m2(0.25, 0, 0, 0.25), m1(0.25)});
  const Functional lifted = unitize_functional(phi);
  CHECK(lifted.descriptor().block_dims() == std::vector<int>{2, 1, 1});
  CHECK(oracle::max_abs_difference(lifted.density_block(2), m1(0.25)) <= 1e-15);
  CHECK(classify(lifted) == FunctionalClass::State);
  CHECK(qstate_distance(restrict_unitized(lifted), phi) == 0.0);

  for (int j = 0; j < 30; ++j) {
    const Functional a =
        random_functional(kDesc, 800 + static_cast<std::uint64_t>(j), SampleKind::QuasiState);
    const Functional b =
        random_functional(kDesc, 900 + static_cast<std::uint64_t>(j), SampleKind::QuasiState);
    const double direct = qstate_distance(a, b);
    const double gap = std::abs(functional_norm(a) - functional_norm(b));
    CHECK(std::abs(qstate_distance(unitize_functional(a), unitize_functional(b)) -
                   (direct + gap)) <= 1e-12);
  }
  // Inputs outside the quasi-state set are rejected.
  CHECK_THROWS_AS(unitize_functional(Functional(kDesc, {m2(1.0, 0, 0, 0.5), m1(0.3)})),
                  std::invalid_argument);
}

TEST_CASE("affine functions evaluate on quasi-states only") {
  const AlgebraElement a = random_element(kDesc, 21);
  const AffineFunctionOnQ f = affine_from_element(a);
  const Functional phi = random_functional(kDesc, 22, SampleKind::QuasiState);
  CHECK(std::abs(evaluate_affine(f, phi) - pair(phi, a)) <= 1e-13);
  const Functional outside(kDesc, {m2(1.0, 0, 0, 0.5), m1(0.3)});
  CHECK_THROWS_AS(evaluate_affine(f, outside), std::invalid_argument);
  // The unchecked entry point skips the domain test.
  CHECK(std::abs(f.unchecked(outside) - pair(outside, a)) <= 1e-13);
}

TEST_CASE("pairings scale linearly along the quasi-state cone") {
  for (int j = 0; j < 20; ++j) {
    const Functional phi =
        random_functional(kDesc, 950 + static_cast<std::uint64_t>(j), SampleKind::State);
    const AlgebraElement a = random_element(kDesc, 960 + static_cast<std::uint64_t>(j));
    Rng rng(970 + static_cast<std::uint64_t>(j));
    const double t = rng.uniform();
    CHECK(std::abs(pair(t * phi, a) - t * pair(phi, a)) <= 1e-13);
  }
}

}  // TEST_SUITE
