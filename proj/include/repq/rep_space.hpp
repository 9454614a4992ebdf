// Possibly-degenerate *-representations of a multi-matrix algebra on a fixed
// finite-dimensional Hilbert space, the vector-state map theta sending a
// representation/unit-vector pair to a quasi-state, and its structure: every
// quasi-state has an explicit preimage, and near any quasi-state the map
// admits an explicit local lift back to representation/vector pairs.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "repq/gns.hpp"

namespace repq {

// A *-homomorphism into the bounded operators of a d-dimensional space,
// stored through its values on the canonical matrix-unit basis. pi(1) is a
// projection but need not be the identity (degenerate representations and
// the zero representation are first-class).
class Representation {
 public:
  Representation(AlgebraDescriptor descriptor, int ambient_dim, std::vector<Matrix> images);

  static Representation zero(const AlgebraDescriptor& descriptor, int ambient_dim);

  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  int ambient_dim() const { return ambient_dim_; }
  const Matrix& image(int basis_index) const { return images_.at(static_cast<size_t>(basis_index)); }
  const std::vector<Matrix>& images() const { return images_; }

  // Linear extension to an arbitrary element.
  Matrix apply(const AlgebraElement& a) const;

  // pi(1), the sum of diagonal matrix-unit images.
  Matrix unit_image() const;

 private:
  AlgebraDescriptor descriptor_;
  int ambient_dim_ = 0;
  std::vector<Matrix> images_;
};

struct RepValidation {
  double multiplicativity_defect = 0.0;
  double adjoint_defect = 0.0;
  double unit_projection_defect = 0.0;  // || pi(1)^2 - pi(1) || and hermiticity
  double contraction_excess = 0.0;      // max over basis of (||pi(e)|| - 1)+
  bool pass = false;
};

// Full morphism audit over all basis pairs.
RepValidation validate_representation(const Representation& pi, double tol = 1e-9);

// Uniform distance over the canonical basis: max_e ||pi1(e) - pi2(e)||.
double rep_distance(const Representation& pi1, const Representation& pi2);

// The vector state of (pi, xi): the quasi-state with block densities
// rho_i(q, p) = <pi(E_pq) xi, xi>. Requires ||xi|| = 1 (strict) and a
// plausibly valid pi (cheap pi(1)-projection guard; run
// validate_representation for the full audit).
Functional theta(const Representation& pi, const Vector& xi);

// True iff xi lies in the essential subspace: pi(1) xi = xi within tol.
bool membership_rep_xi(const Representation& pi, const Vector& xi, double tol = 1e-9);

// Orthogonal projection onto the essential subspace (range of pi(1)).
Matrix essential_projection(const Representation& pi);

// Unitary mapping unit vector alpha to unit vector beta, acting only on
// their 2-dimensional span: the identity plus a rotation of the plane
// spanned by alpha and beta. Satisfies ||U - I|| = ||alpha - beta|| and, for
// collinear inputs beta = k alpha, degenerates to k times the identity.
Matrix rotation_unitary(const Vector& alpha, const Vector& beta);

// e -> U^{-1} pi(e) U; U must be unitary within 1e-10.
Representation conjugate(const Representation& pi, const Matrix& unitary);

// Explicit theta-preimage of a quasi-state phi at the prescribed unit vector
// xi: embeds the GNS representation of phi into the ambient space so that
// theta(result, xi) = phi, with essential rank at most ambient_dim - 1.
// The auxiliary direction (needed when ||phi|| < 1) defaults to the first
// standard basis vector with squared residual >= 1/2 after Gram-Schmidt
// against xi; pass `v` to override it with any unit vector orthogonal to xi.
Representation embed_preimage(const Functional& phi, const Vector& xi, int ambient_dim,
                              std::optional<Vector> v = std::nullopt);

// Block-diagonal model representation: multiplicities[i] copies of block i
// acting on consecutive coordinates (block-major, copies contiguous), zero on
// the remaining coordinates.
Representation canonical_representation(const AlgebraDescriptor& descriptor, int ambient_dim,
                                        const std::vector<int>& multiplicities);

// Seeded representation: canonical block copies with random multiplicities
// (or the given ones), conjugated by a Haar unitary.
Representation random_representation(const AlgebraDescriptor& descriptor, int ambient_dim,
                                     std::uint64_t seed,
                                     std::optional<std::vector<int>> multiplicities = std::nullopt);

struct LiftDetails {
  Representation lifted;     // pi'' with theta(pi'', xi) = phi_target
  double lambda = 0.0;       // scaling of the residual direction (1 when norms agree)
  bool fresh_direction = false;  // true on the xi = eta branch
  double rotation_size = 0.0;    // ||U - I|| = ||xi' - xi||
};

// Local lift: given (pi, xi) with theta(pi, xi) = phi and a nearby target
// quasi-state, produces pi'' on the same space with theta(pi'', xi) =
// phi_target, moving continuously with the target wherever the GNS rank of
// the target matches the base. Requires ambient_dim >= dim(A) + 1.
LiftDetails local_lift_detailed(const Representation& pi, const Vector& xi,
                                const Functional& phi_target);
Representation local_lift(const Representation& pi, const Vector& xi,
                          const Functional& phi_target);

}  // namespace repq
