#include "repq/rep_space.hpp"

#include <cmath>
#include <stdexcept>

#include "repq/random.hpp"

namespace repq {

namespace {

constexpr std::uint64_t kRepStream = 0x72657020ULL;

void require_same_space(const Representation& a, const Representation& b) {
  if (a.descriptor() != b.descriptor() || a.ambient_dim() != b.ambient_dim()) {
    throw std::invalid_argument("representations live on different spaces");
  }
}

// Hermitian square root with negative rounding dust clamped to zero.
Matrix psd_sqrt(const Matrix& h) {
  const HermitianEigen eig = hermitian_eigen_descending(0.5 * (h + h.adjoint()));
  Matrix out = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > 0.0) {
      out += std::sqrt(eig.values(k)) * eig.vectors.col(k) * eig.vectors.col(k).adjoint();
    }
  }
  return out;
}

// First standard basis vector with squared residual >= 1/2 after
// Gram-Schmidt against the unit vector xi, normalized and phase-fixed.
Vector residual_direction(const Vector& xi) {
  for (Eigen::Index k = 0; k < xi.size(); ++k) {
    if (1.0 - std::norm(xi(k)) >= 0.5) {
      Vector w = -std::conj(xi(k)) * xi;
      w(k) += 1.0;
      return phase_fixed(w / w.norm());
    }
  }
  throw std::invalid_argument("no residual direction: ambient dimension too small");
}

}  // namespace

Representation::Representation(AlgebraDescriptor descriptor, int ambient_dim,
                               std::vector<Matrix> images)
    : descriptor_(std::move(descriptor)), ambient_dim_(ambient_dim), images_(std::move(images)) {
  if (ambient_dim_ < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  if (static_cast<int>(images_.size()) != descriptor_.dim()) {
    throw std::invalid_argument("representation needs one image per basis element");
  }
  for (const Matrix& m : images_) {
    if (m.rows() != ambient_dim_ || m.cols() != ambient_dim_) {
      throw std::invalid_argument("image shape does not match ambient dimension");
    }
  }
}

Representation Representation::zero(const AlgebraDescriptor& descriptor, int ambient_dim) {
  std::vector<Matrix> images(static_cast<size_t>(descriptor.dim()),
                             Matrix::Zero(ambient_dim, ambient_dim));
  return Representation(descriptor, ambient_dim, std::move(images));
}

Matrix Representation::apply(const AlgebraElement& a) const {
  if (a.descriptor() != descriptor_) {
    throw std::invalid_argument("apply: element descriptor mismatch");
  }
  Matrix out = Matrix::Zero(ambient_dim_, ambient_dim_);
  const Vector coords = a.coordinates();
  for (int k = 0; k < descriptor_.dim(); ++k) {
    if (coords(k) != Complex(0.0, 0.0)) out += coords(k) * images_[static_cast<size_t>(k)];
  }
  return out;
}

Matrix Representation::unit_image() const {
  Matrix out = Matrix::Zero(ambient_dim_, ambient_dim_);
  for (int i = 0; i < descriptor_.block_count(); ++i) {
    for (int p = 0; p < descriptor_.block_dim(i); ++p) {
      out += images_[static_cast<size_t>(descriptor_.basis_index(i, p, p))];
    }
  }
  return out;
}

RepValidation validate_representation(const Representation& pi, double tol) {
  RepValidation v;
  const AlgebraDescriptor& desc = pi.descriptor();
  const int dim = desc.dim();
  const std::vector<AlgebraElement> basis = canonical_basis(desc);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      const AlgebraElement prod = basis[static_cast<size_t>(a)] * basis[static_cast<size_t>(b)];
      const Matrix expected = pi.apply(prod);
      v.multiplicativity_defect =
          std::max(v.multiplicativity_defect,
                   operator_norm(pi.image(a) * pi.image(b) - expected));
    }
    const Matrix adj_expected = pi.apply(basis[static_cast<size_t>(a)].adjoint());
    v.adjoint_defect = std::max(v.adjoint_defect,
                                operator_norm(pi.image(a).adjoint() - adj_expected));
    v.contraction_excess =
        std::max(v.contraction_excess, operator_norm(pi.image(a)) - 1.0);
  }
  v.contraction_excess = std::max(v.contraction_excess, 0.0);
  const Matrix unit = pi.unit_image();
  v.unit_projection_defect =
      std::max(operator_norm(unit * unit - unit), hermiticity_defect(unit));
  v.pass = v.multiplicativity_defect <= tol && v.adjoint_defect <= tol &&
           v.unit_projection_defect <= tol && v.contraction_excess <= tol;
  return v;
}

double rep_distance(const Representation& pi1, const Representation& pi2) {
  require_same_space(pi1, pi2);
  double best = 0.0;
  for (size_t k = 0; k < pi1.images().size(); ++k) {
    best = std::max(best, operator_norm(pi1.images()[k] - pi2.images()[k]));
  }
  return best;
}

Functional theta(const Representation& pi, const Vector& xi) {
  if (xi.size() != pi.ambient_dim()) {
    throw std::invalid_argument("theta: vector length does not match ambient dimension");
  }
  if (std::abs(xi.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("theta: xi must be a unit vector");
  }
  const Matrix unit = pi.unit_image();
  if ((unit * unit - unit).norm() > 1e-6 || (unit - unit.adjoint()).norm() > 1e-6) {
    throw std::invalid_argument("theta: pi(1) is not close to a projection");
  }
  const AlgebraDescriptor& desc = pi.descriptor();
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<size_t>(desc.block_count()));
  for (int i = 0; i < desc.block_count(); ++i) {
    const int n = desc.block_dim(i);
    Matrix rho(n, n);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        rho(q, p) = inner(pi.image(desc.basis_index(i, p, q)) * xi, xi);
      }
    }
    blocks.push_back(std::move(rho));
  }
  return Functional(desc, std::move(blocks));
}

bool membership_rep_xi(const Representation& pi, const Vector& xi, double tol) {
  if (xi.size() != pi.ambient_dim()) {
    throw std::invalid_argument("membership_rep_xi: vector length mismatch");
  }
  if (std::abs(xi.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("membership_rep_xi: xi must be a unit vector");
  }
  // Compare squared lengths: for a projection p the residual ||p xi - xi||
  // equals sqrt(1 - ||p xi||^2), so testing the squared quantity keeps
  // rounding at working precision instead of its square root.
  return 1.0 - (pi.unit_image() * xi).squaredNorm() <= tol;
}

Matrix essential_projection(const Representation& pi) {
  const Matrix unit = pi.unit_image();
  const Matrix herm = 0.5 * (unit + unit.adjoint());
  const HermitianEigen eig = hermitian_eigen_descending(herm);
  Matrix p = Matrix::Zero(pi.ambient_dim(), pi.ambient_dim());
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    if (eig.values(k) > 0.5) {
      const Vector v = eig.vectors.col(k);
      p += v * v.adjoint();
    }
  }
  return p;
}

Matrix rotation_unitary(const Vector& alpha, const Vector& beta) {
  if (alpha.size() != beta.size() || alpha.size() == 0) {
    throw std::invalid_argument("rotation_unitary: vectors must share a nonzero dimension");
  }
  const double na = alpha.norm();
  const double nb = beta.norm();
  if (std::abs(na - 1.0) > 1e-12 || std::abs(nb - 1.0) > 1e-12) {
    throw std::invalid_argument("rotation_unitary: vectors must be unit");
  }
  const Eigen::Index d = alpha.size();
  const Vector a = alpha / na;
  const Vector b = beta / nb;
  const Complex r = inner(b, a);
  const Vector w = b - r * a;
  const double s = w.norm();
  if (s <= 1e-12) {
    // Collinear: beta = k alpha with |k| = 1.
    const double ra = std::abs(r);
    const Complex k = ra > 0.0 ? r / ra : Complex(1.0, 0.0);
    return k * Matrix::Identity(d, d);
  }
  const Vector ap = w / s;
  const Vector bp = -s * a + std::conj(r) * ap;
  Matrix u = Matrix::Identity(d, d);
  u += (b - a) * a.adjoint();
  u += (bp - ap) * ap.adjoint();
  return u;
}

Representation conjugate(const Representation& pi, const Matrix& unitary) {
  const int d = pi.ambient_dim();
  if (unitary.rows() != d || unitary.cols() != d) {
    throw std::invalid_argument("conjugate: unitary shape mismatch");
  }
  if (operator_norm(unitary.adjoint() * unitary - Matrix::Identity(d, d)) > 1e-10) {
    throw std::invalid_argument("conjugate: matrix is not unitary");
  }
  std::vector<Matrix> images;
  images.reserve(pi.images().size());
  for (const Matrix& m : pi.images()) {
    images.push_back(unitary.adjoint() * m * unitary);
  }
  return Representation(pi.descriptor(), d, std::move(images));
}

Representation embed_preimage(const Functional& phi, const Vector& xi, int ambient_dim,
                              std::optional<Vector> v) {
  const AlgebraDescriptor& desc = phi.descriptor();
  if (!is_quasi_state(phi, 1e-9)) {
    throw std::invalid_argument("embed_preimage expects a quasi-state");
  }
  if (xi.size() != ambient_dim) {
    throw std::invalid_argument("embed_preimage: vector length mismatch");
  }
  if (std::abs(xi.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("embed_preimage: xi must be a unit vector");
  }
  const GnsTriple t = gns(phi);
  const int m = t.space_dim;
  if (ambient_dim < m + 1) {
    throw std::invalid_argument("embed_preimage: ambient dimension too small");
  }
  if (m == 0) return Representation::zero(desc, ambient_dim);

  const double weight = t.cyclic_vector.squaredNorm();  // = ||phi||
  Vector dir;
  if (v.has_value()) {
    dir = *v;
    if (dir.size() != ambient_dim || std::abs(dir.norm() - 1.0) > 1e-10 ||
        std::abs(inner(dir, xi)) > 1e-10) {
      throw std::invalid_argument("embed_preimage: v must be a unit vector orthogonal to xi");
    }
  } else {
    dir = residual_direction(xi);
  }
  const Vector eta = weight * xi + std::sqrt(std::max(weight - weight * weight, 0.0)) * dir;

  // Domain frame: the normalized cyclic vector extended across the GNS space.
  Matrix dom(m, m);
  dom.col(0) = t.cyclic_vector / t.cyclic_vector.norm();
  if (m > 1) dom.rightCols(m - 1) = extend_frame(m, dom.leftCols(1), m - 1);

  // Range frame: eta direction extended inside the orthocomplement of xi-eta,
  // so that <xi, b_j> = <eta, b_j> for every frame vector.
  const Vector gap = xi - eta;
  const double gap_norm = gap.norm();
  Matrix fixed(ambient_dim, gap_norm > 1e-12 ? 2 : 1);
  int col = 0;
  if (gap_norm > 1e-12) fixed.col(col++) = gap / gap_norm;
  fixed.col(col) = eta / eta.norm();
  Matrix range(ambient_dim, m);
  range.col(0) = eta / eta.norm();
  if (m > 1) range.rightCols(m - 1) = extend_frame(ambient_dim, fixed, m - 1);

  const Matrix w = range * dom.adjoint();
  std::vector<Matrix> images;
  images.reserve(t.rep_matrices.size());
  for (const Matrix& r : t.rep_matrices) {
    images.push_back(w * r * w.adjoint());
  }
  return Representation(desc, ambient_dim, std::move(images));
}

Representation canonical_representation(const AlgebraDescriptor& descriptor, int ambient_dim,
                                        const std::vector<int>& multiplicities) {
  if (static_cast<int>(multiplicities.size()) != descriptor.block_count()) {
    throw std::invalid_argument("canonical_representation: one multiplicity per block");
  }
  std::vector<int> block_base(static_cast<size_t>(descriptor.block_count()), 0);
  int offset = 0;
  for (int i = 0; i < descriptor.block_count(); ++i) {
    if (multiplicities[static_cast<size_t>(i)] < 0) {
      throw std::invalid_argument("canonical_representation: negative multiplicity");
    }
    block_base[static_cast<size_t>(i)] = offset;
    offset += multiplicities[static_cast<size_t>(i)] * descriptor.block_dim(i);
  }
  if (offset > ambient_dim) {
    throw std::invalid_argument("canonical_representation: multiplicities exceed ambient dimension");
  }
  std::vector<Matrix> images;
  images.reserve(static_cast<size_t>(descriptor.dim()));
  for (int i = 0; i < descriptor.block_count(); ++i) {
    const int n = descriptor.block_dim(i);
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        Matrix img = Matrix::Zero(ambient_dim, ambient_dim);
        for (int c = 0; c < multiplicities[static_cast<size_t>(i)]; ++c) {
          const int base = block_base[static_cast<size_t>(i)] + c * n;
          img(base + p, base + q) = 1.0;
        }
        images.push_back(std::move(img));
      }
    }
  }
  return Representation(descriptor, ambient_dim, std::move(images));
}

Representation random_representation(const AlgebraDescriptor& descriptor, int ambient_dim,
                                     std::uint64_t seed,
                                     std::optional<std::vector<int>> multiplicities) {
  if (ambient_dim < 1) throw std::invalid_argument("ambient dimension must be >= 1");
  Rng rng(mix_seed(seed, kRepStream));
  std::vector<int> mult;
  if (multiplicities.has_value()) {
    mult = *multiplicities;
  } else {
    int remaining = ambient_dim;
    for (int i = 0; i < descriptor.block_count(); ++i) {
      const int cap = remaining / descriptor.block_dim(i);
      const int m = cap > 0 ? rng.uniform_int(0, cap) : 0;
      mult.push_back(m);
      remaining -= m * descriptor.block_dim(i);
    }
  }
  const Representation canonical = canonical_representation(descriptor, ambient_dim, mult);
  return conjugate(canonical, haar_unitary(ambient_dim, rng));
}

LiftDetails local_lift_detailed(const Representation& pi, const Vector& xi,
                                const Functional& phi_target) {
  const AlgebraDescriptor& desc = pi.descriptor();
  const int d = pi.ambient_dim();
  if (d < desc.min_ambient_dim()) {
    throw std::invalid_argument("local_lift: ambient dimension below dim(A) + 1");
  }
  if (phi_target.descriptor() != desc) {
    throw std::invalid_argument("local_lift: target descriptor mismatch");
  }
  if (!is_quasi_state(phi_target, 1e-9)) {
    throw std::invalid_argument("local_lift: target is not a quasi-state");
  }
  const Functional phi = theta(pi, xi);  // validates xi and the pi(1) guard
  const Vector gap = xi - pi.unit_image() * xi;
  const double gap_norm = gap.norm();

  // Matrix-unit coordinates of the essential subspace: for each block i an
  // orthonormal basis F of ran pi(E^i_00) spreads to the orthonormal frame
  // [pi(E^i_p0) F]_p, on which pi acts through the row index alone. In these
  // coordinates the essential part of xi is one coefficient matrix Y per
  // block, with Y Y* equal to the matching density block of theta(pi, xi).
  // Rescaling Y by sqrt(target density) * pinv(sqrt(base density)) moves the
  // realized functional to the target while staying inside the same
  // representation, and depends smoothly on the target at full rank: the
  // distance moved is governed by ||xi' - xi|| with no frame bookkeeping.
  std::vector<Matrix> frames;
  frames.reserve(static_cast<size_t>(desc.block_count()));
  int essential_cols = 0;
  Vector zeta = Vector::Zero(d);
  for (int i = 0; i < desc.block_count(); ++i) {
    const int n = desc.block_dim(i);
    const Matrix corner = pi.image(desc.basis_index(i, 0, 0));
    const HermitianEigen pick = hermitian_eigen_descending(0.5 * (corner + corner.adjoint()));
    int mult = 0;
    while (mult < static_cast<int>(pick.values.size()) && pick.values(mult) > 0.5) ++mult;
    if (mult == 0) continue;  // block absent from pi: it cannot carry mass
    Matrix frame(d, n * mult);
    for (int p = 0; p < n; ++p) {
      frame.middleCols(p * mult, mult) =
          pi.image(desc.basis_index(i, p, 0)) * pick.vectors.leftCols(mult);
    }
    Matrix y(n, mult);
    const Vector coords = frame.adjoint() * xi;
    for (int p = 0; p < n; ++p) y.row(p) = coords.segment(p * mult, mult).transpose();

    const HermitianEigen base_eig = hermitian_eigen_descending(
        0.5 * (phi.density_block(i) + phi.density_block(i).adjoint()));
    const double top = std::max(base_eig.values(0), 0.0);
    Matrix inv_sqrt = Matrix::Zero(n, n);
    Matrix support = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k < base_eig.values.size(); ++k) {
      const double lam = base_eig.values(k);
      if (lam > top * 1e-12 && lam > 0.0) {
        const Matrix spectral = base_eig.vectors.col(k) * base_eig.vectors.col(k).adjoint();
        inv_sqrt += (1.0 / std::sqrt(lam)) * spectral;
        support += spectral;
      }
    }
    const Matrix target_sqrt = psd_sqrt(phi_target.density_block(i));
    Matrix z = target_sqrt * inv_sqrt * y;

    // Target mass outside the support of the base density (rank growth):
    // place it in multiplicity directions Y does not use, as room permits.
    // Callers flag rank-mismatch rows; this keeps the map total on them.
    const Matrix escaped = target_sqrt * (Matrix::Identity(n, n) - support) * target_sqrt;
    if (std::abs(escaped.trace()) > 1e-12) {
      const HermitianEigen grown = hermitian_eigen_descending(escaped);
      Eigen::ColPivHouseholderQR<Matrix> qr(y.adjoint());
      const int used = std::min(static_cast<int>(qr.rank()), mult);
      const Matrix used_basis = Matrix(qr.householderQ()).leftCols(used);
      const int avail = mult - used;
      const Matrix room = avail > 0 ? extend_frame(mult, used_basis, avail) : Matrix(mult, 0);
      int placed = 0;
      for (Eigen::Index k = 0; k < grown.values.size() && placed < avail; ++k) {
        if (grown.values(k) > 1e-12 * std::max(1.0, grown.values(0))) {
          z += std::sqrt(grown.values(k)) * grown.vectors.col(k) * room.col(placed).adjoint();
          ++placed;
        }
      }
    }

    Vector flat(n * mult);
    for (int p = 0; p < n; ++p) flat.segment(p * mult, mult) = z.row(p).transpose();
    zeta += frame * flat;
    essential_cols += n * mult;
    frames.push_back(std::move(frame));
  }

  const double deficit = std::max(1.0 - zeta.squaredNorm(), 0.0);
  LiftDetails out{Representation::zero(desc, d), 0.0, false, 0.0};
  Vector xi2;
  if (gap_norm <= 1e-4) {
    // xi lies in the essential subspace up to noise; top up the norm along a
    // fresh direction orthogonal to it. The threshold is generous on purpose:
    // the branch below divides by gap_norm, so a near-machine-scale gap would
    // amplify rounding noise, while this branch is exact for any gap size.
    out.fresh_direction = true;
    if (essential_cols >= d) {
      if (deficit > 1e-12) {
        throw std::invalid_argument(
            "local_lift: target weight needs a direction outside the essential "
            "subspace, but the essential subspace fills the ambient space");
      }
      xi2 = zeta;
    } else if (deficit > 0.0) {
      Matrix essential(d, essential_cols);
      int col = 0;
      for (const Matrix& f : frames) {
        essential.middleCols(col, static_cast<int>(f.cols())) = f;
        col += static_cast<int>(f.cols());
      }
      xi2 = zeta + std::sqrt(deficit) * extend_frame(d, essential, 1).col(0);
    } else {
      xi2 = zeta;
    }
  } else {
    out.lambda = std::sqrt(deficit) / gap_norm;
    xi2 = zeta + out.lambda * gap;
  }

  const Matrix u = rotation_unitary(xi, xi2);
  out.rotation_size = operator_norm(u - Matrix::Identity(d, d));
  std::vector<Matrix> images;
  images.reserve(pi.images().size());
  for (const Matrix& m : pi.images()) {
    images.push_back(u.adjoint() * m * u);
  }
  out.lifted = Representation(desc, d, std::move(images));
  return out;
}

Representation local_lift(const Representation& pi, const Vector& xi,
                          const Functional& phi_target) {
  return local_lift_detailed(pi, xi, phi_target).lifted;
}

}  // namespace repq
