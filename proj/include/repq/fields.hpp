// Operator fields over the representation space: assignments pi -> T(pi)
// that vanish on the zero representation, commute with every intertwiner,
// and stay inside the essential corner p T(pi) p. Element-induced fields
// pi -> pi(a) are the compatible examples; audits probe arbitrary fields
// against sampled intertwiners, and a compatible field plus a base vector
// reconstructs the inducing algebra element from its affine function on
// quasi-states.
#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

#include "repq/rep_space.hpp"

namespace repq {

class Field {
 public:
  using Evaluator = std::function<Matrix(const Representation&)>;

  static Field custom(std::string name, AlgebraDescriptor descriptor, int ambient_dim,
                      Evaluator evaluator);

  const std::string& name() const { return name_; }
  const AlgebraDescriptor& descriptor() const { return descriptor_; }
  int ambient_dim() const { return ambient_dim_; }

  // True when the field was built from an algebra element (the compatible
  // prototype); element() then returns it.
  bool element_induced() const { return element_.has_value(); }
  const AlgebraElement& element() const;

  // Evaluates T(pi); the representation must live on the declared space.
  Matrix operator()(const Representation& pi) const;

 private:
  Field(std::string name, AlgebraDescriptor descriptor, int ambient_dim, Evaluator evaluator);

  std::string name_;
  AlgebraDescriptor descriptor_;
  int ambient_dim_ = 0;
  Evaluator evaluator_;
  std::optional<AlgebraElement> element_;

  friend Field field_from_element(const AlgebraElement& a, int ambient_dim);
};

// The field pi -> pi(a).
Field field_from_element(const AlgebraElement& a, int ambient_dim);

// Deliberately incompatible fixtures used to exercise audit rejection.
Field adversarial_constant_field(const AlgebraDescriptor& descriptor, int ambient_dim);
Field adversarial_trace_field(const AlgebraDescriptor& descriptor, int ambient_dim);

// max over the canonical basis of ||S pi1(e) - pi2(e) S||.
double intertwiner_defect(const Matrix& s, const Representation& pi1,
                          const Representation& pi2);

enum class IntertwinerKind {
  Unitary,            // pi2 = conjugated pi1, S the conjugating unitary
  PartialIsometry,    // commutant-shaped partial isometry between two reps
  Projection,         // hermitian idempotent in the commutant of one rep
  DirectSumEmbedding, // inclusion of pi1 into pi1 (+) extra block copies
  ZeroToZeroRep       // S supported on the degenerate part, pi2 = 0
};
const char* to_string(IntertwinerKind kind);

struct IntertwinerSample {
  IntertwinerKind kind;
  Representation pi1;
  Representation pi2;
  Matrix s;
};

// Seeded sampler; the construction guarantees S pi1(e) = pi2(e) S up to
// floating-point roundoff for every kind.
IntertwinerSample sample_intertwiner(const AlgebraDescriptor& descriptor, int ambient_dim,
                                     IntertwinerKind kind, std::uint64_t seed);

// Round-robin over the five kinds.
std::vector<IntertwinerSample> make_audit_samples(const AlgebraDescriptor& descriptor,
                                                  int ambient_dim, std::uint64_t seed,
                                                  int count);

struct PolarFactors {
  Matrix partial_isometry;  // U, matching S on the support of P
  Matrix positive;          // P = (S* S)^{1/2}
};

// Polar decomposition S = U P of an intertwiner; both factors again
// intertwine the pair. Throws if S is not an intertwiner within tol.
PolarFactors polar_decompose_intertwiner(const Matrix& s, const Representation& pi1,
                                         const Representation& pi2, double tol = 1e-6);

struct CommutationReport {
  double positive_commutator = 0.0;     // ||[T(pi), P]||
  double exponential_commutator = 0.0;  // ||[T(pi), exp(i r P)]||
  double exponent_scale = 0.0;          // r, chosen so r * spec(P) fits in [0, 2 pi)
};

// Probes whether commutation with the unitaries exp(i r P) pins down
// commutation with a positive intertwiner P itself.
CommutationReport positive_commutation_check(const Field& t, const Representation& pi,
                                             const Matrix& positive, double tol = 1e-6);

// || T(pi) - p T(pi) p || for the essential projection p of pi.
double essential_sandwich_check(const Field& t, const Representation& pi);

struct AuditReport {
  int samples = 0;
  double tolerance = 1e-7;
  double zero_rep_defect = 0.0;       // ||T(0)||
  double max_intertwiner_defect = 0.0;
  double max_sandwich_defect = 0.0;
  double max_defect = 0.0;            // overall maximum
  std::map<IntertwinerKind, double> per_kind_defect;
  bool pass = false;
};

// Runs the field against prepared intertwiner samples plus the zero
// representation and essential-corner checks.
AuditReport run_audit(const Field& t, const std::vector<IntertwinerSample>& samples,
                      double tolerance = 1e-7);

// Convenience: audits against freshly sampled intertwiners.
AuditReport compatibility_audit(const Field& t, std::uint64_t seed, int samples = 100,
                                double tolerance = 1e-7);

// Raised when a reconstruction is attempted with a field that fails its
// audit; carries the failing report.
class AuditFailure : public std::runtime_error {
 public:
  explicit AuditFailure(AuditReport report);
  const AuditReport& report() const { return report_; }

 private:
  AuditReport report_;
};

// The affine function phi -> <T(pi_phi) xi, xi> where pi_phi is the
// canonical theta-preimage of phi at xi. Requires ambient_dim >= dim(A)+1.
AffineFunctionOnQ induced_affine(const Field& t, const Vector& xi);

// Seeded alternate theta-preimages of phi at xi: even indices re-run the
// embedding with a random auxiliary direction, odd indices conjugate the
// canonical preimage by a unitary fixing xi.
std::vector<Representation> alternate_preimages(const Functional& phi, const Vector& xi,
                                                int ambient_dim, int alternates,
                                                std::uint64_t seed);

// Largest deviation of the induced value across alternate preimages of phi
// (alternate auxiliary directions and conjugations fixing xi). Small spread
// certifies the induced function is well defined on quasi-states.
double preimage_spread(const Field& t, const Vector& xi, const Functional& phi,
                       int alternates, std::uint64_t seed);

enum class ReconstructionMode {
  QuasiStates,  // probe with the canonical quasi-state frame
  StatesOnly    // probe with the trace-normalized frame (homogeneity route)
};

// The published probe family: per block, the scaled diagonal densities and
// the real/imaginary pair probes; exactly dim(A) quasi-states (or states)
// whose pairings determine an element uniquely.
std::vector<Functional> reconstruction_frame(const AlgebraDescriptor& descriptor,
                                             ReconstructionMode mode);

struct Reconstruction {
  AlgebraElement element;
  double residual = 0.0;  // max probe mismatch of the recovered element
  AuditReport audit;
};

// Audits the field (throwing AuditFailure on rejection), evaluates its
// induced affine function on the probe frame, and solves for the unique
// algebra element matching those values.
Reconstruction reconstruct_element(const Field& t, const Vector& xi,
                                   ReconstructionMode mode,
                                   const std::vector<IntertwinerSample>& audit_samples,
                                   double audit_tolerance = 1e-7);
Reconstruction reconstruct_element(const Field& t, const Vector& xi,
                                   ReconstructionMode mode = ReconstructionMode::QuasiStates,
                                   std::uint64_t audit_seed = 0, int audit_samples = 100,
                                   double audit_tolerance = 1e-7);

}  // namespace repq
