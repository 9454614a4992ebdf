#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "repq/functionals.hpp"
#include "repq/gns.hpp"
#include "repq/random.hpp"
#include "repq/rep_space.hpp"

using namespace repq;

namespace {

const AlgebraDescriptor kDesc({2, 1});
constexpr int kDim = 6;  // smallest ambient dimension for (2,1)

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector unit6(std::initializer_list<Complex> entries) {
  Vector v = Vector::Zero(kDim);
  int k = 0;
  for (Complex e : entries) v(k++) = e;
  return v;
}

}  // namespace

TEST_SUITE("representations") {

TEST_CASE("canonical block representation acts on leading coordinates") {
  const Representation pi = canonical_representation(kDesc, kDim, {1, 1});
  CHECK(validate_representation(pi).pass);
  const Matrix unit = pi.unit_image();
  for (int k = 0; k < kDim; ++k) {
    CHECK(std::abs(unit(k, k) - (k < 3 ? Complex(1, 0) : Complex(0, 0))) == 0.0);
  }
  // The first block's matrix units act on coordinates 0..1, the 1x1 block on
  // coordinate 2, everything else is dead.
  const Matrix e01 = pi.image(kDesc.basis_index(0, 0, 1));
  CHECK(e01(0, 1) == Complex(1, 0));
  CHECK(e01.cwiseAbs().sum() == 1.0);
  const Matrix f = pi.image(kDesc.basis_index(1, 0, 0));
  CHECK(f(2, 2) == Complex(1, 0));
  CHECK(f.cwiseAbs().sum() == 1.0);
  CHECK(oracle::max_abs_difference(essential_projection(pi), unit) <= 1e-12);
}

TEST_CASE("representation validation flags broken images") {
  const Representation pi = canonical_representation(kDesc, kDim, {1, 1});
  std::vector<Matrix> scaled = pi.images();
  for (Matrix& m : scaled) m *= 1.1;
  const RepValidation bad = validate_representation(Representation(kDesc, kDim, scaled));
  CHECK_FALSE(bad.pass);
  CHECK(bad.multiplicativity_defect > 1e-3);
  CHECK(bad.contraction_excess > 0.05);
}

TEST_CASE("seeded representations are valid, deterministic, and capped") {
  for (int j = 0; j < 20; ++j) {
    const Representation pi =
        random_representation(kDesc, kDim, 100 + static_cast<std::uint64_t>(j));
    const RepValidation val = validate_representation(pi);
    CHECK(val.pass);
    CHECK(val.multiplicativity_defect <= 1e-10);
  }
  const Representation a = random_representation(kDesc, kDim, 5);
  const Representation b = random_representation(kDesc, kDim, 5);
  CHECK(rep_distance(a, b) == 0.0);
  // Requested multiplicities pin the essential rank.
  const Representation fixed = random_representation(kDesc, kDim, 5, {{1, 1}});
  CHECK(numerical_rank(fixed.unit_image()) == 3);
}

TEST_CASE("distance between block models counts the extra copy") {
  const Representation one = canonical_representation(kDesc, kDim, {1, 1});
  const Representation two = canonical_representation(kDesc, kDim, {2, 1});
  CHECK(rep_distance(one, one) == 0.0);
  CHECK(rep_distance(one, two) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("vector functional of the block model is the outer product") {
  const Representation pi = canonical_representation(kDesc, kDim, {1, 1});
  const Functional phi = theta(pi, unit6({0.6, Complex(0, 0.8)}));
  CHECK(oracle::max_abs_difference(
            phi.density_block(0),
            m2(0.36, Complex(0, -0.48), Complex(0, 0.48), 0.64)) <= 1e-15);
  CHECK(std::abs(phi.density_block(1)(0, 0)) == 0.0);
  CHECK(classify(phi) == FunctionalClass::State);

  // Mass on dead coordinates lowers the weight.
  const Functional partial = theta(pi, unit6({0.6, 0, 0, 0.8}));
  CHECK(functional_norm(partial) == doctest::Approx(0.36).epsilon(1e-12));
  CHECK(classify(partial) == FunctionalClass::QuasiState);

  CHECK_THROWS_AS(theta(pi, Vector(2.0 * unit6({1.0}))), std::invalid_argument);
}

TEST_CASE("plane rotation fixes hand-computed values in two dimensions") {
  Vector alpha(2), beta(2);
  alpha << 1, 0;
  beta << 0, 1;
  const Matrix u = rotation_unitary(alpha, beta);
  CHECK(std::abs(u(0, 0)) <= 1e-15);
  CHECK(std::abs(u(0, 1) - Complex(-1, 0)) <= 1e-15);
  CHECK(std::abs(u(1, 0) - Complex(1, 0)) <= 1e-15);
  CHECK(std::abs(u(1, 1)) <= 1e-15);
  CHECK((u * alpha - beta).norm() <= 1e-15);
  CHECK(std::abs(operator_norm(u - Matrix::Identity(2, 2)) - std::sqrt(2.0)) <= 1e-12);
}

TEST_CASE("plane rotation: mapping, unitarity, norm, and displacement laws") {
  for (int j = 0; j < 60; ++j) {
    Rng rng(3000 + static_cast<std::uint64_t>(j));
    const Vector alpha = random_unit_vector(kDim, rng);
    const Vector beta = random_unit_vector(kDim, rng);
    const Matrix u = rotation_unitary(alpha, beta);
    CHECK((u * alpha - beta).norm() <= 1e-12);
    CHECK(operator_norm(u.adjoint() * u - Matrix::Identity(kDim, kDim)) <= 1e-12);
    CHECK(std::abs(operator_norm(u - Matrix::Identity(kDim, kDim)) - (alpha - beta).norm()) <=
          1e-10);
    // Vectors orthogonal to the plane are fixed.
    Vector x = random_unit_vector(kDim, rng);
    x -= inner(x, alpha) * alpha;
    Vector beta_perp = beta - inner(beta, alpha) * alpha;
    if (beta_perp.norm() > 1e-6) {
      beta_perp /= beta_perp.norm();
      x -= inner(x, beta_perp) * beta_perp;
      if (x.norm() > 1e-6) {
        x /= x.norm();
        CHECK((u * x - x).norm() <= 1e-11);
      }
    }
  }
}

TEST_CASE("collinear inputs rotate by a scalar phase") {
  Rng rng(77);
  const Vector alpha = random_unit_vector(kDim, rng);
  const Complex phase = std::exp(Complex(0, 1.234));
  const Matrix u = rotation_unitary(alpha, Vector(phase * alpha));
  CHECK(operator_norm(u - phase * Matrix::Identity(kDim, kDim)) <= 1e-12);
  // Identical vectors give the identity exactly.
  const Matrix id = rotation_unitary(alpha, alpha);
  CHECK(oracle::max_abs_difference(id, Matrix::Identity(kDim, kDim)) == 0.0);
}

TEST_CASE("every quasi-state has an explicit vector-functional preimage") {
  for (int j = 0; j < 40; ++j) {
    Rng rng(4000 + static_cast<std::uint64_t>(j));
    const SampleKind kind = j % 2 == 0 ? SampleKind::State : SampleKind::QuasiState;
    const std::optional<int> rank =
        j % 4 < 2 ? std::nullopt : std::optional<int>(1 + j % 3);
    const Functional phi =
        random_functional(kDesc, 4100 + static_cast<std::uint64_t>(j), kind, rank);
    const Vector xi = random_unit_vector(kDim, rng);
    const Representation pre = embed_preimage(phi, xi, kDim);
    CHECK(validate_representation(pre).pass);
    CHECK(qstate_distance(theta(pre, xi), phi) <= 1e-9);
    CHECK(numerical_rank(pre.unit_image()) <= kDim - 1);
    const bool member = membership_rep_xi(pre, xi);
    if (kind == SampleKind::State) CHECK(member);
    if (functional_norm(phi) < 1.0 - 1e-6) CHECK_FALSE(member);
  }
}

TEST_CASE("preimage embedding validates its auxiliary direction") {
  const Functional phi = random_functional(kDesc, 9, SampleKind::QuasiState);
  Rng rng(10);
  const Vector xi = random_unit_vector(kDim, rng);
  // A legal override: any unit vector orthogonal to xi.
  Vector v = random_unit_vector(kDim, rng);
  v -= inner(v, xi) * xi;
  v /= v.norm();
  const Representation pre = embed_preimage(phi, xi, kDim, v);
  CHECK(qstate_distance(theta(pre, xi), phi) <= 1e-9);
  // Wrong size, non-unit, and non-orthogonal overrides are rejected.
  CHECK_THROWS_AS(embed_preimage(phi, xi, kDim, Vector(Vector::Ones(3))),
                  std::invalid_argument);
  CHECK_THROWS_AS(embed_preimage(phi, xi, kDim, Vector(2.0 * v)), std::invalid_argument);
  CHECK_THROWS_AS(embed_preimage(phi, xi, kDim, xi), std::invalid_argument);
  // Ambient dimension must exceed the quotient dimension.
  const Functional full = random_functional(kDesc, 11, SampleKind::State);
  CHECK_THROWS_AS(embed_preimage(full, Vector(random_unit_vector(5, rng)), 5),
                  std::invalid_argument);
  // The zero functional embeds as the zero representation.
  const Representation zero = embed_preimage(Functional::zero(kDesc), xi, kDim);
  CHECK(rep_distance(zero, Representation::zero(kDesc, kDim)) == 0.0);
}

TEST_CASE("conjugation moves the vector functional to the rotated vector") {
  for (int j = 0; j < 20; ++j) {
    Rng rng(5000 + static_cast<std::uint64_t>(j));
    const Representation pi =
        random_representation(kDesc, kDim, 5100 + static_cast<std::uint64_t>(j));
    const Matrix u = haar_unitary(kDim, rng);
    const Vector xi = random_unit_vector(kDim, rng);
    Vector uxi = u * xi;
    uxi /= uxi.norm();
    CHECK(qstate_distance(theta(conjugate(pi, u), xi), theta(pi, uxi)) <= 1e-10);
  }
  const Representation pi = random_representation(kDesc, kDim, 5);
  CHECK_THROWS_AS(conjugate(pi, Matrix(2.0 * Matrix::Identity(kDim, kDim))),
                  std::invalid_argument);
}

TEST_CASE("lifting the current functional returns the base point") {
  for (int j = 0; j < 10; ++j) {
    Rng rng(6000 + static_cast<std::uint64_t>(j));
    const Functional phi =
        random_functional(kDesc, 6100 + static_cast<std::uint64_t>(j), SampleKind::QuasiState);
    const Vector xi = random_unit_vector(kDim, rng);
    const Representation base = embed_preimage(phi, xi, kDim);
    const Representation back = local_lift(base, xi, theta(base, xi));
    CHECK(rep_distance(back, base) <= 1e-12);
  }
}

TEST_CASE("lift scales the residual direction by one when weights agree") {
  Rng rng(61);
  const Functional phi = 0.7 * random_functional(kDesc, 62, SampleKind::State);
  const Functional target = 0.7 * random_functional(kDesc, 63, SampleKind::State);
  const Vector xi = random_unit_vector(kDim, rng);
  const Representation base = embed_preimage(phi, xi, kDim);
  const LiftDetails details = local_lift_detailed(base, xi, target);
  CHECK(std::abs(details.lambda - 1.0) <= 1e-9);
  CHECK_FALSE(details.fresh_direction);
  CHECK(qstate_distance(theta(details.lifted, xi), target) <= 1e-9);
}

TEST_CASE("lift from a weight-one base needs a fresh direction") {
  Rng rng(64);
  const Functional phi = random_functional(kDesc, 65, SampleKind::State);
  const Functional target = 0.8 * random_functional(kDesc, 66, SampleKind::State);
  const Vector xi = random_unit_vector(kDim, rng);
  const Representation base = embed_preimage(phi, xi, kDim);
  const LiftDetails details = local_lift_detailed(base, xi, target);
  CHECK(details.fresh_direction);
  CHECK(details.lambda == 0.0);
  CHECK(qstate_distance(theta(details.lifted, xi), target) <= 1e-9);
  CHECK(validate_representation(details.lifted).pass);
}

TEST_CASE("lift requires enough ambient room") {
  const Representation tight = canonical_representation(kDesc, 5, {1, 1});
  Rng rng(67);
  const Vector xi = random_unit_vector(5, rng);
  const Functional target = random_functional(kDesc, 68, SampleKind::QuasiState);
  CHECK_THROWS_AS(local_lift(tight, xi, target), std::invalid_argument);
}

TEST_CASE("lift tracks nearby targets without leaving the fiber over them") {
  Rng rng(70);
  const Functional phi = random_functional(kDesc, 71, SampleKind::QuasiState);
  const Functional psi = random_functional(kDesc, 72, SampleKind::QuasiState);
  const Vector xi = random_unit_vector(kDim, rng);
  const Representation base = embed_preimage(phi, xi, kDim);
  double previous = -1.0;
  for (int n = 1; n <= 8; ++n) {
    const double t = std::pow(2.0, -n);
    const Functional target = (1.0 - t) * phi + t * psi;
    const Representation lifted = local_lift(base, xi, target);
    CHECK(qstate_distance(theta(lifted, xi), target) <= 1e-9);
    const double moved = rep_distance(lifted, base);
    if (n >= 3) CHECK(moved <= previous + 1e-12);
    previous = moved;
  }
}

}  // TEST_SUITE
