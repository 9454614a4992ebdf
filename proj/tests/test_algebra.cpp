#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "repq/algebra.hpp"
#include "repq/functionals.hpp"
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

}  // namespace

TEST_SUITE("algebra") {

TEST_CASE("descriptor bookkeeping for (2,1) and (3,2,1)") {
  const AlgebraDescriptor small({2, 1});
  CHECK(small.block_count() == 2);
  CHECK(small.block_dim(0) == 2);
  CHECK(small.block_dim(1) == 1);
  CHECK(small.dim() == 5);
  CHECK(small.min_ambient_dim() == 6);
  // Block-major, row-major within a block.
  CHECK(small.basis_index(0, 0, 0) == 0);
  CHECK(small.basis_index(0, 0, 1) == 1);
  CHECK(small.basis_index(0, 1, 0) == 2);
  CHECK(small.basis_index(0, 1, 1) == 3);
  CHECK(small.basis_index(1, 0, 0) == 4);

  const AlgebraDescriptor big({3, 2, 1});
  CHECK(big.dim() == 14);
  CHECK(big.min_ambient_dim() == 15);
  CHECK(big.basis_index(0, 2, 2) == 8);
  CHECK(big.basis_index(1, 0, 0) == 9);
  CHECK(big.basis_index(1, 1, 0) == 11);
  CHECK(big.basis_index(2, 0, 0) == 13);

  CHECK(small == AlgebraDescriptor({2, 1}));
  CHECK(small != big);
  CHECK_THROWS_AS(AlgebraDescriptor({2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(AlgebraDescriptor({}), std::invalid_argument);
}

TEST_CASE("norm is the largest block operator norm") {
  const AlgebraDescriptor desc({2, 1});
  // Shear block: top singular value is the golden ratio.
  const AlgebraElement a(desc, {m2(1, 1, 0, 1), m1(0.5)});
  CHECK(norm(a) == doctest::Approx(1.618033988749895).epsilon(1e-12));
  // The 1x1 block dominates here.
  const AlgebraElement b(desc, {m2(2, 0, 0, 1), m1(3)});
  CHECK(norm(b) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(norm(AlgebraElement::zero(desc)) == 0.0);
  CHECK(norm(AlgebraElement::unit(desc)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("norm agrees with a power-iteration reference on random elements") {
  const AlgebraDescriptor desc({3, 2, 1});
  for (int j = 0; j < 25; ++j) {
    const AlgebraElement a = random_element(desc, 900 + static_cast<std::uint64_t>(j));
    double reference = 0.0;
    for (const Matrix& blockm : a.blocks()) {
      reference = std::max(reference, oracle::operator_norm(blockm));
    }
    CHECK(std::abs(norm(a) - reference) <= 1e-9 * (1.0 + reference));
  }
}

TEST_CASE("C*-identity and submultiplicativity hold numerically") {
  const AlgebraDescriptor desc({2, 1});
  for (int j = 0; j < 50; ++j) {
    const AlgebraElement a = random_element(desc, 100 + static_cast<std::uint64_t>(j));
    const AlgebraElement b = random_element(desc, 200 + static_cast<std::uint64_t>(j));
    const double na = norm(a);
    CHECK(std::abs(norm(a.adjoint() * a) - na * na) <= 1e-10 * (1.0 + na * na));
    CHECK(norm(a * b) <= na * norm(b) + 1e-10);
    CHECK(norm(a + b) <= na + norm(b) + 1e-10);
  }
}

TEST_CASE("matrix units multiply and star the way matrix units should") {
  const AlgebraDescriptor desc({2, 1});
  const AlgebraElement e01 = AlgebraElement::basis_element(desc, 0, 0, 1);
  const AlgebraElement e10 = AlgebraElement::basis_element(desc, 0, 1, 0);
  const AlgebraElement e11 = AlgebraElement::basis_element(desc, 0, 1, 1);
  const AlgebraElement f = AlgebraElement::basis_element(desc, 1, 0, 0);
  CHECK(max_entry_distance(e01.adjoint(), e10) == 0.0);
  CHECK(max_entry_distance(e01 * e11, e01) == 0.0);
  CHECK(max_entry_distance(e01 * e01, AlgebraElement::zero(desc)) == 0.0);
  CHECK(max_entry_distance(e01 * f, AlgebraElement::zero(desc)) == 0.0);
  CHECK(max_entry_distance(f * f, f) == 0.0);
  // Unit acts as the identity on both sides, exactly.
  const AlgebraElement a = random_element(desc, 7);
  const AlgebraElement unit = AlgebraElement::unit(desc);
  CHECK(max_entry_distance(unit * a, a) == 0.0);
  CHECK(max_entry_distance(a * unit, a) == 0.0);
}

TEST_CASE("coordinates invert the basis expansion bitwise") {
  const AlgebraDescriptor desc({3, 2, 1});
  const AlgebraElement a = random_element(desc, 42);
  const Vector coords = a.coordinates();
  CHECK(coords.size() == desc.dim());
  CHECK(max_entry_distance(AlgebraElement::from_coordinates(desc, coords), a) == 0.0);
  // Basis elements map to standard coordinate vectors.
  const std::vector<AlgebraElement> basis = canonical_basis(desc);
  CHECK(static_cast<int>(basis.size()) == desc.dim());
  for (int k = 0; k < desc.dim(); ++k) {
    const Vector c = basis[static_cast<size_t>(k)].coordinates();
    for (int l = 0; l < desc.dim(); ++l) {
      CHECK(c(l) == (l == k ? Complex(1, 0) : Complex(0, 0)));
    }
  }
}

TEST_CASE("positivity test accepts PSD blocks and rejects the rest") {
  const AlgebraDescriptor desc({2, 1});
  CHECK(is_positive(AlgebraElement(desc, {m2(2, 1, 1, 1), m1(0)})));
  CHECK(is_positive(AlgebraElement::zero(desc)));
  CHECK(is_positive(AlgebraElement::unit(desc)));
  // Eigenvalues 3 and -1 in the first block.
  CHECK_FALSE(is_positive(AlgebraElement(desc, {m2(1, 2, 2, 1), m1(1)})));
  // Non-hermitian.
  CHECK_FALSE(is_positive(AlgebraElement(desc, {m2(0, 1, 0, 0), m1(1)})));
  // Negative 1x1 tail.
  CHECK_FALSE(is_positive(AlgebraElement(desc, {m2(1, 0, 0, 1), m1(-0.01)})));
  // a* a is always positive.
  const AlgebraElement a = random_element(desc, 11);
  CHECK(is_positive(a.adjoint() * a));
}

TEST_CASE("unitization appends a scalar block and shifts by the identity") {
  const AlgebraDescriptor desc({2, 1});
  const AlgebraDescriptor udesc = unitized(desc);
  CHECK(udesc.block_dims() == std::vector<int>{2, 1, 1});

  const AlgebraElement a(desc, {m2(1, 0, 0, 0), m1(0.25)});
  const AlgebraElement t = embed_unitized(a, Complex(0.5, 0));
  CHECK(t.descriptor() == udesc);
  CHECK(oracle::max_abs_difference(t.block(0), m2(1.5, 0, 0, 0.5)) == 0.0);
  CHECK(oracle::max_abs_difference(t.block(1), m1(0.75)) == 0.0);
  CHECK(oracle::max_abs_difference(t.block(2), m1(0.5)) == 0.0);

  // The embedded unit of A differs from the unit of the unitization exactly
  // in the appended scalar slot.
  const AlgebraElement unit_a = embed_unitized(AlgebraElement::unit(desc), 0.0);
  const AlgebraElement one = AlgebraElement::unit(udesc);
  const AlgebraElement scalar_slot(udesc, {Matrix::Zero(2, 2), Matrix::Zero(1, 1), m1(1)});
  CHECK(max_entry_distance(one - unit_a, scalar_slot) == 0.0);
}

TEST_CASE("unitization round trip recovers element and scalar") {
  const AlgebraDescriptor desc({3, 2, 1});
  Rng rng(31);
  for (int j = 0; j < 20; ++j) {
    const AlgebraElement a = random_element(desc, 300 + static_cast<std::uint64_t>(j));
    const Complex lambda = rng.complex_gaussian();
    const auto [back, mu] = split_unitized(embed_unitized(a, lambda));
    CHECK(max_entry_distance(back, a) <= 1e-12 * (1.0 + std::abs(lambda)));
    CHECK(std::abs(mu - lambda) == 0.0);
  }
  // Splitting requires a trailing scalar block.
  CHECK_THROWS_AS(split_unitized(AlgebraElement::unit(AlgebraDescriptor({2}))),
                  std::invalid_argument);
}

TEST_CASE("element arithmetic matches blockwise matrix arithmetic") {
  const AlgebraDescriptor desc({2, 1});
  const AlgebraElement a(desc, {m2(1, Complex(0, 2), 0, 1), m1(2)});
  const AlgebraElement b(desc, {m2(0, 1, 1, 0), m1(Complex(0, -1))});
  const AlgebraElement sum = a + b;
  CHECK(oracle::max_abs_difference(sum.block(0), m2(1, Complex(1, 2), 1, 1)) == 0.0);
  const AlgebraElement prod = a * b;
  CHECK(oracle::max_abs_difference(prod.block(0),
                                   m2(Complex(0, 2), 1, 1, 0)) == 0.0);
  CHECK(oracle::max_abs_difference(prod.block(1), m1(Complex(0, -2))) == 0.0);
  const AlgebraElement scaled = Complex(0, 1) * a;
  CHECK(oracle::max_abs_difference(scaled.block(1), m1(Complex(0, 2))) == 0.0);
  CHECK(max_entry_distance(a - a, AlgebraElement::zero(desc)) == 0.0);
  CHECK(max_entry_distance(-a + a, AlgebraElement::zero(desc)) == 0.0);
  // Mismatched descriptors are rejected.
  CHECK_THROWS_AS(a + AlgebraElement::unit(AlgebraDescriptor({2, 2})),
                  std::invalid_argument);
}

}  // TEST_SUITE
