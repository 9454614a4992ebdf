#include "repq/fields.hpp"

#include <cmath>
#include <numbers>

#include "repq/random.hpp"

namespace repq {

namespace {

constexpr std::uint64_t kKindStreamBase = 0x696e7477ULL;
constexpr std::uint64_t kSpreadStream = 0x73707264ULL;

int essential_dim(const AlgebraDescriptor& desc, const std::vector<int>& mult) {
  int total = 0;
  for (int i = 0; i < desc.block_count(); ++i) {
    total += mult[static_cast<size_t>(i)] * desc.block_dim(i);
  }
  return total;
}

int min_block_dim(const AlgebraDescriptor& desc) {
  int best = desc.block_dim(0);
  for (int i = 1; i < desc.block_count(); ++i) best = std::min(best, desc.block_dim(i));
  return best;
}

std::vector<int> sample_multiplicities(const AlgebraDescriptor& desc, int budget, Rng& rng,
                                       bool force_nonzero) {
  std::vector<int> mult;
  int remaining = budget;
  for (int i = 0; i < desc.block_count(); ++i) {
    const int cap = remaining / desc.block_dim(i);
    const int m = cap > 0 ? rng.uniform_int(0, cap) : 0;
    mult.push_back(m);
    remaining -= m * desc.block_dim(i);
  }
  if (force_nonzero && essential_dim(desc, mult) == 0) {
    for (int i = 0; i < desc.block_count(); ++i) {
      if (desc.block_dim(i) <= budget) {
        mult[static_cast<size_t>(i)] = 1;
        break;
      }
    }
  }
  return mult;
}

// Commutant-shaped map between two canonical layouts: per block a matrix on
// copy labels amplified by the block identity, plus an arbitrary map between
// the degenerate tails.
Matrix commutant_map(const AlgebraDescriptor& desc, int d, const std::vector<int>& mult1,
                     const std::vector<int>& mult2, const std::vector<Matrix>& copy_maps,
                     const Matrix& tail_map) {
  Matrix m = Matrix::Zero(d, d);
  int base1 = 0;
  int base2 = 0;
  for (int i = 0; i < desc.block_count(); ++i) {
    const int n = desc.block_dim(i);
    const int m1 = mult1[static_cast<size_t>(i)];
    const int m2 = mult2[static_cast<size_t>(i)];
    const Matrix& a = copy_maps[static_cast<size_t>(i)];
    for (int c2 = 0; c2 < m2; ++c2) {
      for (int c1 = 0; c1 < m1; ++c1) {
        for (int r = 0; r < n; ++r) {
          m(base2 + c2 * n + r, base1 + c1 * n + r) = a(c2, c1);
        }
      }
    }
    base1 += m1 * n;
    base2 += m2 * n;
  }
  const int tail1 = d - base1;
  const int tail2 = d - base2;
  if (tail_map.size() > 0) {
    if (tail_map.rows() != tail2 || tail_map.cols() != tail1) {
      throw std::invalid_argument("commutant_map: tail shape mismatch");
    }
    m.block(base2, base1, tail2, tail1) = tail_map;
  }
  return m;
}

Matrix random_partial_isometry(int rows, int cols, Rng& rng) {
  if (rows == 0 || cols == 0) return Matrix::Zero(rows, cols);
  const int r = rng.uniform_int(0, std::min(rows, cols));
  const Matrix g = gaussian_matrix(rows, cols, rng);
  if (r == 0) return Matrix::Zero(rows, cols);
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU().leftCols(r) * svd.matrixV().leftCols(r).adjoint();
}

Matrix random_orthoprojection(int n, Rng& rng) {
  if (n == 0) return Matrix::Zero(0, 0);
  const int k = rng.uniform_int(0, n);
  const Matrix q = haar_unitary(n, rng);
  return q.leftCols(k) * q.leftCols(k).adjoint();
}

}  // namespace

Field::Field(std::string name, AlgebraDescriptor descriptor, int ambient_dim,
             Evaluator evaluator)
    : name_(std::move(name)),
      descriptor_(std::move(descriptor)),
      ambient_dim_(ambient_dim),
      evaluator_(std::move(evaluator)) {
  if (ambient_dim_ < 1) throw std::invalid_argument("field needs a positive ambient dimension");
  if (!evaluator_) throw std::invalid_argument("field needs an evaluator");
}

Field Field::custom(std::string name, AlgebraDescriptor descriptor, int ambient_dim,
                    Evaluator evaluator) {
  return Field(std::move(name), std::move(descriptor), ambient_dim, std::move(evaluator));
}

const AlgebraElement& Field::element() const {
  if (!element_.has_value()) throw std::logic_error("field is not element-induced");
  return *element_;
}

Matrix Field::operator()(const Representation& pi) const {
  if (pi.descriptor() != descriptor_ || pi.ambient_dim() != ambient_dim_) {
    throw std::invalid_argument("field evaluated on a representation of the wrong space");
  }
  return evaluator_(pi);
}

Field field_from_element(const AlgebraElement& a, int ambient_dim) {
  Field f("element", a.descriptor(), ambient_dim,
          [a](const Representation& pi) { return pi.apply(a); });
  f.element_ = a;
  return f;
}

Field adversarial_constant_field(const AlgebraDescriptor& descriptor, int ambient_dim) {
  return Field::custom("constant-identity", descriptor, ambient_dim,
                       [ambient_dim](const Representation&) {
                         return Matrix::Identity(ambient_dim, ambient_dim);
                       });
}

Field adversarial_trace_field(const AlgebraDescriptor& descriptor, int ambient_dim) {
  const AlgebraElement probe = AlgebraElement::unit(descriptor);
  return Field::custom("trace-identity", descriptor, ambient_dim,
                       [probe, ambient_dim](const Representation& pi) {
                         return pi.apply(probe).trace() *
                                Matrix::Identity(ambient_dim, ambient_dim);
                       });
}

double intertwiner_defect(const Matrix& s, const Representation& pi1,
                          const Representation& pi2) {
  if (pi1.descriptor() != pi2.descriptor() || pi1.ambient_dim() != pi2.ambient_dim()) {
    throw std::invalid_argument("intertwiner_defect: representations on different spaces");
  }
  const int d = pi1.ambient_dim();
  if (s.rows() != d || s.cols() != d) {
    throw std::invalid_argument("intertwiner_defect: map shape mismatch");
  }
  double best = 0.0;
  for (size_t k = 0; k < pi1.images().size(); ++k) {
    best = std::max(best, operator_norm(s * pi1.images()[k] - pi2.images()[k] * s));
  }
  return best;
}

const char* to_string(IntertwinerKind kind) {
  switch (kind) {
    case IntertwinerKind::Unitary: return "unitary";
    case IntertwinerKind::PartialIsometry: return "partial_isometry";
    case IntertwinerKind::Projection: return "projection";
    case IntertwinerKind::DirectSumEmbedding: return "direct_sum_embedding";
    case IntertwinerKind::ZeroToZeroRep: return "zero_to_zero_rep";
  }
  return "unknown";
}

IntertwinerSample sample_intertwiner(const AlgebraDescriptor& desc, int d,
                                     IntertwinerKind kind, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("sample_intertwiner: ambient dimension must be >= 1");
  Rng rng(mix_seed(seed, kKindStreamBase + static_cast<std::uint64_t>(kind)));
  switch (kind) {
    case IntertwinerKind::Unitary: {
      const std::vector<int> mult = sample_multiplicities(desc, d, rng, false);
      const Representation pi1 =
          conjugate(canonical_representation(desc, d, mult), haar_unitary(d, rng));
      const Matrix u = haar_unitary(d, rng);
      return {kind, pi1, conjugate(pi1, u), u.adjoint()};
    }
    case IntertwinerKind::PartialIsometry: {
      const std::vector<int> mult1 = sample_multiplicities(desc, d, rng, false);
      const std::vector<int> mult2 = sample_multiplicities(desc, d, rng, false);
      std::vector<Matrix> copy_maps;
      for (int i = 0; i < desc.block_count(); ++i) {
        copy_maps.push_back(random_partial_isometry(mult2[static_cast<size_t>(i)],
                                                    mult1[static_cast<size_t>(i)], rng));
      }
      const int tail1 = d - essential_dim(desc, mult1);
      const int tail2 = d - essential_dim(desc, mult2);
      const Matrix tail = random_partial_isometry(tail2, tail1, rng);
      const Matrix m = commutant_map(desc, d, mult1, mult2, copy_maps, tail);
      const Matrix u1 = haar_unitary(d, rng);
      const Matrix u2 = haar_unitary(d, rng);
      const Representation pi1 = conjugate(canonical_representation(desc, d, mult1), u1);
      const Representation pi2 = conjugate(canonical_representation(desc, d, mult2), u2);
      return {kind, pi1, pi2, u2.adjoint() * m * u1};
    }
    case IntertwinerKind::Projection: {
      const std::vector<int> mult = sample_multiplicities(desc, d, rng, false);
      std::vector<Matrix> copy_maps;
      for (int i = 0; i < desc.block_count(); ++i) {
        copy_maps.push_back(random_orthoprojection(mult[static_cast<size_t>(i)], rng));
      }
      const int tail = d - essential_dim(desc, mult);
      const Matrix tail_proj = random_orthoprojection(tail, rng);
      const Matrix m = commutant_map(desc, d, mult, mult, copy_maps, tail_proj);
      const Matrix u = haar_unitary(d, rng);
      const Representation pi = conjugate(canonical_representation(desc, d, mult), u);
      return {kind, pi, pi, u.adjoint() * m * u};
    }
    case IntertwinerKind::DirectSumEmbedding: {
      // Reserve room so the extra summand is never forced empty.
      const std::vector<int> mult_a =
          sample_multiplicities(desc, d - min_block_dim(desc), rng, false);
      const int ess_a = essential_dim(desc, mult_a);
      const std::vector<int> mult_b = sample_multiplicities(desc, d - ess_a, rng, true);
      std::vector<int> mult_sum;
      std::vector<Matrix> copy_maps;
      for (int i = 0; i < desc.block_count(); ++i) {
        const int ma = mult_a[static_cast<size_t>(i)];
        const int mb = mult_b[static_cast<size_t>(i)];
        mult_sum.push_back(ma + mb);
        Matrix incl = Matrix::Zero(ma + mb, ma);
        for (int c = 0; c < ma; ++c) incl(c, c) = 1.0;
        copy_maps.push_back(std::move(incl));
      }
      const Matrix m = commutant_map(desc, d, mult_a, mult_sum, copy_maps, Matrix(0, 0));
      const Matrix u1 = haar_unitary(d, rng);
      const Matrix u2 = haar_unitary(d, rng);
      const Representation pi1 = conjugate(canonical_representation(desc, d, mult_a), u1);
      const Representation pi2 = conjugate(canonical_representation(desc, d, mult_sum), u2);
      return {kind, pi1, pi2, u2.adjoint() * m * u1};
    }
    case IntertwinerKind::ZeroToZeroRep: {
      // Keep at least one degenerate coordinate so the sample is nontrivial.
      const std::vector<int> mult =
          sample_multiplicities(desc, std::max(0, d - 1), rng, d > min_block_dim(desc));
      const Representation pi1 =
          conjugate(canonical_representation(desc, d, mult), haar_unitary(d, rng));
      const Matrix complement =
          Matrix::Identity(d, d) - pi1.unit_image();
      Matrix s = gaussian_matrix(d, d, rng) * complement;
      const double scale = operator_norm(s);
      if (scale > 1e-12) s /= scale;
      return {kind, pi1, Representation::zero(desc, d), s};
    }
  }
  throw std::invalid_argument("sample_intertwiner: unknown kind");
}

std::vector<IntertwinerSample> make_audit_samples(const AlgebraDescriptor& desc, int d,
                                                  std::uint64_t seed, int count) {
  static constexpr IntertwinerKind kKinds[] = {
      IntertwinerKind::Unitary, IntertwinerKind::PartialIsometry,
      IntertwinerKind::Projection, IntertwinerKind::DirectSumEmbedding,
      IntertwinerKind::ZeroToZeroRep};
  std::vector<IntertwinerSample> samples;
  samples.reserve(static_cast<size_t>(std::max(0, count)));
  for (int j = 0; j < count; ++j) {
    samples.push_back(sample_intertwiner(desc, d, kKinds[j % 5], mix_seed(seed, j)));
  }
  return samples;
}

PolarFactors polar_decompose_intertwiner(const Matrix& s, const Representation& pi1,
                                         const Representation& pi2, double tol) {
  if (intertwiner_defect(s, pi1, pi2) > tol) {
    throw std::invalid_argument("polar_decompose_intertwiner: map is not an intertwiner");
  }
  const Eigen::Index d = s.rows();
  Eigen::JacobiSVD<Matrix> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  PolarFactors out{Matrix::Zero(d, d), Matrix::Zero(d, d)};
  if (top <= 0.0) return out;
  const double cutoff = 1e-12 * top;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  out.partial_isometry =
      svd.matrixU().leftCols(rank) * svd.matrixV().leftCols(rank).adjoint();
  out.positive = svd.matrixV() * sv.asDiagonal() * svd.matrixV().adjoint();
  return out;
}

CommutationReport positive_commutation_check(const Field& t, const Representation& pi,
                                             const Matrix& positive, double tol) {
  const int d = pi.ambient_dim();
  if (positive.rows() != d || positive.cols() != d) {
    throw std::invalid_argument("positive_commutation_check: shape mismatch");
  }
  if (hermiticity_defect(positive) > 1e-8) {
    throw std::invalid_argument("positive_commutation_check: matrix is not hermitian");
  }
  const HermitianEigen eig = hermitian_eigen_descending(positive);
  if (eig.values.size() > 0 && eig.values.minCoeff() < -1e-8) {
    throw std::invalid_argument("positive_commutation_check: matrix is not positive");
  }
  if (intertwiner_defect(positive, pi, pi) > tol) {
    throw std::invalid_argument("positive_commutation_check: matrix does not commute with pi");
  }
  CommutationReport out;
  const double top = eig.values.size() > 0 ? std::max(eig.values.maxCoeff(), 0.0) : 0.0;
  out.exponent_scale = top > 0.0 ? 0.9 * 2.0 * std::numbers::pi / top : 1.0;
  const Matrix expo = unitary_exponential(positive, out.exponent_scale);
  const Matrix tm = t(pi);
  out.positive_commutator = operator_norm(tm * positive - positive * tm);
  out.exponential_commutator = operator_norm(tm * expo - expo * tm);
  return out;
}

double essential_sandwich_check(const Field& t, const Representation& pi) {
  const Matrix p = essential_projection(pi);
  const Matrix tm = t(pi);
  return operator_norm(tm - p * tm * p);
}

AuditReport run_audit(const Field& t, const std::vector<IntertwinerSample>& samples,
                      double tolerance) {
  AuditReport report;
  report.samples = static_cast<int>(samples.size());
  report.tolerance = tolerance;
  report.zero_rep_defect =
      operator_norm(t(Representation::zero(t.descriptor(), t.ambient_dim())));
  report.max_defect = report.zero_rep_defect;
  for (const IntertwinerSample& sample : samples) {
    const double defect =
        operator_norm(sample.s * t(sample.pi1) - t(sample.pi2) * sample.s);
    const double sandwich = std::max(essential_sandwich_check(t, sample.pi1),
                                     essential_sandwich_check(t, sample.pi2));
    report.max_intertwiner_defect = std::max(report.max_intertwiner_defect, defect);
    report.max_sandwich_defect = std::max(report.max_sandwich_defect, sandwich);
    double& slot = report.per_kind_defect[sample.kind];
    slot = std::max(slot, std::max(defect, sandwich));
  }
  report.max_defect = std::max({report.zero_rep_defect, report.max_intertwiner_defect,
                                report.max_sandwich_defect});
  report.pass = report.max_defect <= tolerance;
  return report;
}

AuditReport compatibility_audit(const Field& t, std::uint64_t seed, int samples,
                                double tolerance) {
  return run_audit(t, make_audit_samples(t.descriptor(), t.ambient_dim(), seed, samples),
                   tolerance);
}

AuditFailure::AuditFailure(AuditReport report)
    : std::runtime_error("field failed the intertwiner compatibility audit"),
      report_(std::move(report)) {}

AffineFunctionOnQ induced_affine(const Field& t, const Vector& xi) {
  const AlgebraDescriptor desc = t.descriptor();
  const int d = t.ambient_dim();
  if (d < desc.min_ambient_dim()) {
    throw std::invalid_argument("induced_affine: ambient dimension below dim(A) + 1");
  }
  if (xi.size() != d || std::abs(xi.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("induced_affine: xi must be a unit vector of the ambient space");
  }
  return AffineFunctionOnQ(desc, [t, xi, d](const Functional& phi) {
    const Representation pre = embed_preimage(phi, xi, d);
    return inner(t(pre) * xi, xi);
  });
}

std::vector<Representation> alternate_preimages(const Functional& phi, const Vector& xi,
                                                int ambient_dim, int alternates,
                                                std::uint64_t seed) {
  const int d = ambient_dim;
  const Representation base = embed_preimage(phi, xi, d);
  std::vector<Representation> out;
  out.reserve(static_cast<size_t>(std::max(0, alternates)));
  for (int j = 0; j < alternates; ++j) {
    Rng rng(mix_seed(seed, kSpreadStream + static_cast<std::uint64_t>(j)));
    if (j % 2 == 0) {
      // Alternate auxiliary direction orthogonal to xi.
      Vector w = random_unit_vector(d, rng);
      w -= inner(w, xi) * xi;
      double nrm = w.norm();
      while (nrm < 1e-6) {
        w = random_unit_vector(d, rng);
        w -= inner(w, xi) * xi;
        nrm = w.norm();
      }
      out.push_back(embed_preimage(phi, xi, d, Vector(w / nrm)));
    } else {
      // Conjugation by a unitary fixing xi.
      Matrix frame(d, d);
      frame.col(0) = xi;
      frame.rightCols(d - 1) = extend_frame(d, frame.leftCols(1), d - 1);
      Matrix rot = Matrix::Identity(d, d);
      rot.bottomRightCorner(d - 1, d - 1) = haar_unitary(d - 1, rng);
      out.push_back(conjugate(base, frame * rot * frame.adjoint()));
    }
  }
  return out;
}

double preimage_spread(const Field& t, const Vector& xi, const Functional& phi,
                       int alternates, std::uint64_t seed) {
  const int d = t.ambient_dim();
  if (d < t.descriptor().min_ambient_dim()) {
    throw std::invalid_argument("preimage_spread: ambient dimension below dim(A) + 1");
  }
  const Representation base = embed_preimage(phi, xi, d);
  const Complex reference = inner(t(base) * xi, xi);
  double spread = 0.0;
  for (const Representation& alternate : alternate_preimages(phi, xi, d, alternates, seed)) {
    spread = std::max(spread, std::abs(inner(t(alternate) * xi, xi) - reference));
  }
  return spread;
}

std::vector<Functional> reconstruction_frame(const AlgebraDescriptor& desc,
                                             ReconstructionMode mode) {
  std::vector<Functional> frame;
  frame.reserve(static_cast<size_t>(desc.dim()));
  for (int i = 0; i < desc.block_count(); ++i) {
    const int n = desc.block_dim(i);
    auto add = [&](const Matrix& density) {
      Functional probe = Functional::zero(desc);
      std::vector<Matrix> blocks = probe.density_blocks();
      blocks[static_cast<size_t>(i)] = density;
      frame.emplace_back(desc, std::move(blocks));
    };
    const double diag_scale = mode == ReconstructionMode::StatesOnly ? 1.0 : 1.0 / n;
    for (int p = 0; p < n; ++p) {
      Matrix density = Matrix::Zero(n, n);
      density(p, p) = diag_scale;
      add(density);
    }
    const double pair_scale = mode == ReconstructionMode::StatesOnly ? 0.5 : 0.25;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        Matrix real_probe = Matrix::Zero(n, n);
        real_probe(p, p) = pair_scale;
        real_probe(q, q) = pair_scale;
        real_probe(p, q) = pair_scale;
        real_probe(q, p) = pair_scale;
        add(real_probe);
        Matrix imag_probe = Matrix::Zero(n, n);
        imag_probe(p, p) = pair_scale;
        imag_probe(q, q) = pair_scale;
        imag_probe(p, q) = Complex(0.0, pair_scale);
        imag_probe(q, p) = Complex(0.0, -pair_scale);
        add(imag_probe);
      }
    }
  }
  return frame;
}

Reconstruction reconstruct_element(const Field& t, const Vector& xi, ReconstructionMode mode,
                                   const std::vector<IntertwinerSample>& audit_samples,
                                   double audit_tolerance) {
  AuditReport audit = run_audit(t, audit_samples, audit_tolerance);
  if (!audit.pass) throw AuditFailure(std::move(audit));

  const AlgebraDescriptor desc = t.descriptor();
  const int dim = desc.dim();
  const std::vector<Functional> frame = reconstruction_frame(desc, mode);
  const AffineFunctionOnQ f = induced_affine(t, xi);

  Vector values(dim);
  Matrix system(dim, dim);
  for (int k = 0; k < dim; ++k) {
    values(k) = evaluate_affine(f, frame[static_cast<size_t>(k)]);
    for (int i = 0; i < desc.block_count(); ++i) {
      const int n = desc.block_dim(i);
      const Matrix& rho = frame[static_cast<size_t>(k)].density_block(i);
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          system(k, desc.basis_index(i, p, q)) = rho(q, p);
        }
      }
    }
  }
  Eigen::JacobiSVD<Matrix> svd(system, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-9 * sv(0)) {
    throw std::runtime_error("reconstruction probe system is numerically singular");
  }
  const Vector coords = svd.solve(values);
  Reconstruction out{AlgebraElement::from_coordinates(desc, coords), 0.0, std::move(audit)};
  for (int k = 0; k < dim; ++k) {
    out.residual = std::max(
        out.residual, std::abs(pair(frame[static_cast<size_t>(k)], out.element) - values(k)));
  }
  return out;
}

Reconstruction reconstruct_element(const Field& t, const Vector& xi, ReconstructionMode mode,
                                   std::uint64_t audit_seed, int audit_samples,
                                   double audit_tolerance) {
  return reconstruct_element(
      t, xi, mode,
      make_audit_samples(t.descriptor(), t.ambient_dim(), audit_seed, audit_samples),
      audit_tolerance);
}

}  // namespace repq
