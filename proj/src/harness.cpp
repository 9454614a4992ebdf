#include "repq/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "repq/random.hpp"
#include "repq/serialize.hpp"

namespace repq {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

int resolve_count(const ExperimentConfig& config, int default_count) {
  return config.samples > 0 ? config.samples : default_count;
}

std::uint64_t check_seed(const ExperimentConfig& config, std::uint64_t tag, int j) {
  return mix_seed(mix_seed(config.seed, tag), static_cast<std::uint64_t>(j));
}

// Appends named checks with profile-resolved tolerances.
class SuiteBuilder {
 public:
  SuiteBuilder(const ExperimentConfig& config, std::vector<CheckResult>& checks)
      : config_(config), checks_(checks) {}

  void add(const std::string& name, double measured, double default_tol,
           std::string note = "") {
    const double tol = tolerance_for(config_, name, default_tol);
    checks_.push_back({name, measured, tol, measured <= tol, std::move(note)});
  }

 private:
  const ExperimentConfig& config_;
  std::vector<CheckResult>& checks_;
};

double quasi_state_defect(const Functional& phi) {
  double min_eig = 0.0;
  double trace = 0.0;
  double herm = 0.0;
  for (const Matrix& b : phi.density_blocks()) {
    herm = std::max(herm, hermiticity_defect(b));
    const HermitianEigen eig = hermitian_eigen_descending(0.5 * (b + b.adjoint()));
    if (eig.values.size() > 0) min_eig = std::min(min_eig, eig.values.minCoeff());
    trace += b.trace().real();
  }
  return std::max({herm, -min_eig, trace - 1.0, 0.0});
}

Representation near_identity_conjugate(const Representation& pi, Rng& rng) {
  const int d = pi.ambient_dim();
  const Vector x = random_unit_vector(d, rng);
  Vector y = random_unit_vector(d, rng);
  y = x + 0.01 * y;
  y /= y.norm();
  return conjugate(pi, rotation_unitary(x, y));
}

bool finish(Report& report, const Clock::time_point& start) {
  report.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  report.pass = !report.checks.empty();
  for (const CheckResult& c : report.checks) report.pass = report.pass && c.pass;
  return report.pass;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (block_dims.empty()) throw UsageError("algebra needs at least one block");
  int dim = 0;
  for (int n : block_dims) {
    if (n < 1) throw UsageError("algebra block dimensions must be >= 1");
    dim += n * n;
  }
  if (ambient_dim != 0 && ambient_dim < dim + 1) {
    throw UsageError("ambient dimension must be at least dim(A) + 1 = " +
                     std::to_string(dim + 1));
  }
  if (samples < 0) throw UsageError("samples must be >= 0");
  if (tol_profile != "default" && tol_profile != "strict") {
    throw UsageError("tol profile must be 'default' or 'strict'");
  }
  for (const auto& [name, tol] : tolerance_overrides) {
    if (tol < 0.0) throw UsageError("tolerance override for '" + name + "' must be >= 0");
  }
}

AlgebraDescriptor ExperimentConfig::descriptor() const {
  validate();
  return AlgebraDescriptor(block_dims);
}

int ExperimentConfig::resolved_ambient_dim() const {
  validate();
  int dim = 0;
  for (int n : block_dims) dim += n * n;
  return ambient_dim == 0 ? dim + 1 : ambient_dim;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig config;
  if (j.contains("algebra")) config.block_dims = j.at("algebra").get<std::vector<int>>();
  if (j.contains("dim")) config.ambient_dim = j.at("dim").get<int>();
  if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("samples")) config.samples = j.at("samples").get<int>();
  if (j.contains("tol_profile")) config.tol_profile = j.at("tol_profile").get<std::string>();
  if (j.contains("tolerance_overrides")) {
    config.tolerance_overrides =
        j.at("tolerance_overrides").get<std::map<std::string, double>>();
  }
  if (j.contains("functional")) config.functional_file = j.at("functional").get<std::string>();
  config.validate();
  return config;
}

json config_to_json(const ExperimentConfig& config) {
  json j{{"algebra", config.block_dims},
         {"dim", config.resolved_ambient_dim()},
         {"seed", config.seed},
         {"samples", config.samples},
         {"tol_profile", config.tol_profile}};
  if (!config.tolerance_overrides.empty()) j["tolerance_overrides"] = config.tolerance_overrides;
  if (!config.functional_file.empty()) j["functional"] = config.functional_file;
  return j;
}

double tolerance_for(const ExperimentConfig& config, const std::string& check,
                     double default_tolerance) {
  const auto it = config.tolerance_overrides.find(check);
  if (it != config.tolerance_overrides.end()) return it->second;
  if (config.tol_profile == "strict" && default_tolerance > 0.0) {
    return std::max(default_tolerance * 1e-2, 1e-14);
  }
  return default_tolerance;
}

json report_to_json(const Report& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    json entry{{"name", c.name},
               {"measured", c.measured},
               {"tolerance", c.tolerance},
               {"pass", c.pass}};
    if (!c.note.empty()) entry["note"] = c.note;
    checks.push_back(std::move(entry));
  }
  json j{{"schema_version", report.schema_version},
         {"experiment", report.experiment},
         {"config", config_to_json(report.config)},
         {"pass", report.pass},
         {"wall_ms", report.wall_ms},
         {"checks", std::move(checks)}};
  if (!report.note.empty()) j["note"] = report.note;
  if (!report.lift_table.empty()) {
    json rows = json::array();
    for (const LiftRow& r : report.lift_table) {
      rows.push_back({{"step", r.step},
                      {"target_distance", r.target_distance},
                      {"rep_distance", r.rep_distance},
                      {"exactness", r.exactness},
                      {"lambda", r.lambda},
                      {"rank_jump", r.rank_jump}});
    }
    j["lift_table"] = std::move(rows);
  }
  if (!report.extra.is_null()) j["extra"] = report.extra;
  return j;
}

LiftTable run_lift_table(const AlgebraDescriptor& descriptor, int ambient_dim,
                         std::uint64_t seed, int rows) {
  LiftTable table;
  const Functional phi = random_functional(descriptor, mix_seed(seed, 1), SampleKind::QuasiState);
  const Functional psi = random_functional(descriptor, mix_seed(seed, 2), SampleKind::QuasiState);
  Rng xi_rng(mix_seed(seed, 3));
  const Vector xi = random_unit_vector(ambient_dim, xi_rng);
  const Representation base = embed_preimage(phi, xi, ambient_dim);

  const int base_rank = gns(phi).space_dim;
  table.base_full_rank = base_rank == descriptor.dim();
  table.self_distance = rep_distance(local_lift(base, xi, phi), base);

  double previous = 0.0;
  bool have_previous = false;
  for (int n = 1; n <= rows; ++n) {
    const double t = std::pow(2.0, -n);
    const Functional target = (1.0 - t) * phi + t * psi;
    const LiftDetails lift = local_lift_detailed(base, xi, target);
    LiftRow row;
    row.step = n;
    row.target_distance = qstate_distance(target, phi);
    row.rep_distance = rep_distance(lift.lifted, base);
    row.exactness = qstate_distance(theta(lift.lifted, xi), target);
    row.lambda = lift.lambda;
    row.rank_jump = gns(target).space_dim != base_rank;
    table.any_rank_jump = table.any_rank_jump || row.rank_jump;
    if (!row.rank_jump) {
      table.max_exactness = std::max(table.max_exactness, row.exactness);
      if (have_previous && n >= 3 && row.rep_distance > previous) {
        ++table.monotone_violations;
      }
      previous = row.rep_distance;
      have_previous = true;
    }
    table.rows.push_back(row);
  }
  return table;
}

Report run_suite(const ExperimentConfig& config) {
  config.validate();
  const auto start = Clock::now();
  Report report;
  report.experiment = "verify";
  report.config = config;
  SuiteBuilder out(config, report.checks);

  const AlgebraDescriptor desc = config.descriptor();
  const int d = config.resolved_ambient_dim();
  const int dim = desc.dim();

  {  // C*-norm laws over seeded elements.
    const int n = resolve_count(config, 100);
    double cstar = 0.0, subm = 0.0, basis_rt = 0.0;
    for (int j = 0; j < n; ++j) {
      const AlgebraElement a = random_element(desc, check_seed(config, 1, j));
      const AlgebraElement b = random_element(desc, check_seed(config, 2, j));
      const double na = norm(a);
      cstar = std::max(cstar, std::abs(norm(a.adjoint() * a) - na * na) / (1.0 + na * na));
      subm = std::max(subm, norm(a * b) - na * norm(b));
      basis_rt = std::max(basis_rt, max_entry_distance(
          AlgebraElement::from_coordinates(desc, a.coordinates()), a));
    }
    out.add("algebra.cstar_identity", cstar, 1e-10);
    out.add("algebra.submultiplicativity", std::max(subm, 0.0), 1e-10);
    out.add("algebra.basis_roundtrip", basis_rt, 1e-12);
  }
  {  // Unitization round trip on elements.
    const int n = resolve_count(config, 100);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const AlgebraElement a = random_element(desc, check_seed(config, 3, j));
      Rng rng(check_seed(config, 4, j));
      const Complex lambda = rng.complex_gaussian();
      const auto [back, mu] = split_unitized(embed_unitized(a, lambda));
      const double raw = std::max(max_entry_distance(back, a), std::abs(mu - lambda));
      worst = std::max(worst, raw / (1.0 + std::abs(lambda)));
    }
    out.add("algebra.unitize_roundtrip", worst, 1e-12);
  }
  {  // Jordan decomposition of hermitian functionals.
    const int n = resolve_count(config, 200);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const Functional phi = random_hermitian_functional(desc, check_seed(config, 5, j));
      const auto [plus, minus] = jordan_decompose(phi);
      const FunctionalClass cp = classify(plus, 1e-10);
      const FunctionalClass cm = classify(minus, 1e-10);
      const double positivity =
          (cp == FunctionalClass::Hermitian || cp == FunctionalClass::General ||
           cm == FunctionalClass::Hermitian || cm == FunctionalClass::General)
              ? 1.0
              : 0.0;
      const double additivity = std::abs(functional_norm(phi) - functional_norm(plus) -
                                         functional_norm(minus));
      const double recon = qstate_distance(plus - minus, phi);
      worst = std::max({worst, positivity, additivity, recon});
    }
    out.add("functionals.jordan_split", worst, 1e-10);
  }
  {  // Homogeneity of element pairings on the quasi-state cone.
    const int n = resolve_count(config, 100);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const Functional phi =
          random_functional(desc, check_seed(config, 6, j), SampleKind::QuasiState);
      const double nrm = functional_norm(phi);
      if (nrm <= 1e-12) continue;
      const AlgebraElement a = random_element(desc, check_seed(config, 7, j));
      const AffineFunctionOnQ f = affine_from_element(a);
      const Complex direct = evaluate_affine(f, phi);
      const Complex scaled = nrm * evaluate_affine(f, (1.0 / nrm) * phi);
      worst = std::max(worst, std::abs(direct - scaled) / (1.0 + std::abs(direct)));
    }
    out.add("functionals.homogeneity", worst, 1e-10);
  }
  {  // Unitization correspondence: forward lands on states, round trips, and
     // matches distances through the weight gap.
    const int n = resolve_count(config, 200);
    double forward = 0.0, roundtrip = 0.0, distance = 0.0;
    for (int j = 0; j < n; ++j) {
      const Functional phi =
          random_functional(desc, check_seed(config, 8, j),
                            j % 2 == 0 ? SampleKind::QuasiState : SampleKind::State);
      const Functional psi =
          random_functional(desc, check_seed(config, 9, j), SampleKind::QuasiState);
      const Functional phi_u = unitize_functional(phi);
      const Functional psi_u = unitize_functional(psi);
      forward = std::max(forward, std::abs(functional_norm(phi_u) - 1.0));
      forward = std::max(forward, quasi_state_defect(phi_u));
      roundtrip = std::max(roundtrip, qstate_distance(restrict_unitized(phi_u), phi));
      const double lhs = qstate_distance(phi_u, psi_u);
      const double rhs = qstate_distance(phi, psi) +
                         std::abs(functional_norm(phi) - functional_norm(psi));
      distance = std::max(distance, std::abs(lhs - rhs));
    }
    out.add("functionals.unitization_forward", forward, 1e-9);
    out.add("functionals.unitization_roundtrip", roundtrip, 1e-12);
    out.add("functionals.unitization_distance", distance, 1e-10);
  }
  {  // Nondegeneracy of the probe frame used for reconstruction.
    const std::vector<Functional> frame =
        reconstruction_frame(desc, ReconstructionMode::QuasiStates);
    Matrix system(dim, dim);
    for (int k = 0; k < dim; ++k) {
      for (int i = 0; i < desc.block_count(); ++i) {
        const int n = desc.block_dim(i);
        for (int p = 0; p < n; ++p) {
          for (int q = 0; q < n; ++q) {
            system(k, desc.basis_index(i, p, q)) =
                frame[static_cast<size_t>(k)].density_block(i)(q, p);
          }
        }
      }
    }
    out.add("functionals.pairing_rank_defect",
            static_cast<double>(dim - numerical_rank(system)), 0.0);
  }
  {  // GNS: morphism laws, reproduction, norms, cyclicity, dimension bound.
    const int n = resolve_count(config, 200);
    double morphism = 0.0, repro = 0.0, vnorm = 0.0, cyc = 0.0, dimex = 0.0, quasi = 0.0;
    for (int j = 0; j < n; ++j) {
      const Functional phi =
          random_functional(desc, check_seed(config, 10, j),
                            j % 2 == 0 ? SampleKind::State : SampleKind::QuasiState);
      const GnsTriple t = gns(phi);
      const GnsValidation val = validate_gns(t, phi, 1e-9);
      morphism = std::max({morphism, val.multiplicativity_defect, val.adjoint_defect});
      repro = std::max(repro, val.reproduction_defect);
      vnorm = std::max(vnorm, val.norm_defect);
      cyc = std::max(cyc, static_cast<double>(t.space_dim - val.cyclic_rank));
      dimex = std::max(dimex, static_cast<double>(t.space_dim - dim));
      quasi = std::max(quasi, t.cyclic_vector.squaredNorm() - 1.0);
    }
    out.add("gns.morphism", morphism, 1e-9);
    out.add("gns.reproduction", repro, 1e-9);
    out.add("gns.vector_norm", vnorm, 1e-10);
    out.add("gns.cyclic_rank_defect", cyc, 0.0);
    out.add("gns.dimension_excess", std::max(dimex, 0.0), 0.0);
    out.add("gns.quasi_state_vector", std::max(quasi, 0.0), 1e-10);
  }
  {  // Random representations satisfy the morphism laws.
    const int n = resolve_count(config, 100);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const Representation pi = random_representation(desc, d, check_seed(config, 11, j));
      const RepValidation val = validate_representation(pi, 1e-9);
      worst = std::max({worst, val.multiplicativity_defect, val.adjoint_defect,
                        val.unit_projection_defect, val.contraction_excess});
    }
    out.add("rep.random_valid", worst, 1e-9);
  }
  {  // Metric axioms of the uniform basis distance.
    const int n = resolve_count(config, 100);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      const Representation p1 = random_representation(desc, d, check_seed(config, 12, j));
      const Representation p2 = random_representation(desc, d, check_seed(config, 13, j));
      const Representation p3 = random_representation(desc, d, check_seed(config, 14, j));
      worst = std::max(worst, rep_distance(p1, p1));
      worst = std::max(worst, std::abs(rep_distance(p1, p2) - rep_distance(p2, p1)));
      worst = std::max(worst,
                       rep_distance(p1, p3) - rep_distance(p1, p2) - rep_distance(p2, p3));
    }
    out.add("rep.metric_axioms", std::max(worst, 0.0), 1e-12);
  }
  {  // theta lands on quasi-states and is Lipschitz with constant dim(A).
    const int n = resolve_count(config, 500);
    double quasi = 0.0, lipschitz = 0.0;
    for (int j = 0; j < n; ++j) {
      Rng rng(check_seed(config, 15, j));
      const Representation p1 = random_representation(desc, d, check_seed(config, 16, j));
      Representation p2 = p1;
      if (j % 3 == 0) {
        p2 = random_representation(desc, d, check_seed(config, 17, j));
      } else if (j % 3 == 1) {
        p2 = conjugate(p1, haar_unitary(d, rng));
      } else {
        p2 = near_identity_conjugate(p1, rng);
      }
      const Vector xi = random_unit_vector(d, rng);
      const Functional f1 = theta(p1, xi);
      const Functional f2 = theta(p2, xi);
      quasi = std::max({quasi, quasi_state_defect(f1), quasi_state_defect(f2)});
      lipschitz = std::max(lipschitz,
                           qstate_distance(f1, f2) - dim * rep_distance(p1, p2));
    }
    out.add("rep.theta_quasi_state", quasi, 1e-10);
    out.add("rep.theta_continuity", std::max(lipschitz, 0.0), 1e-10);
  }
  {  // Rotation unitary identities.
    const int n = resolve_count(config, 200);
    double maps = 0.0, unit = 0.0, nrm = 0.0, disp = 0.0, coll = 0.0;
    for (int j = 0; j < n; ++j) {
      Rng rng(check_seed(config, 18, j));
      const Vector alpha = random_unit_vector(d, rng);
      const Vector beta = random_unit_vector(d, rng);
      const Matrix u = rotation_unitary(alpha, beta);
      maps = std::max(maps, (u * alpha - beta).norm());
      unit = std::max(unit, operator_norm(u.adjoint() * u - Matrix::Identity(d, d)));
      nrm = std::max(nrm, std::abs(operator_norm(u - Matrix::Identity(d, d)) -
                                   (alpha - beta).norm()));
      // Displacement: ||x - U x|| = ||alpha - beta|| * ||P x|| with P the
      // projection onto the rotation plane.
      Vector plane2 = beta - inner(beta, alpha) * alpha;
      const double pn = plane2.norm();
      if (pn > 1e-8) {
        plane2 /= pn;
        const Vector x = random_unit_vector(d, rng);
        const double px = std::sqrt(std::norm(inner(x, alpha)) + std::norm(inner(x, plane2)));
        disp = std::max(disp,
                        std::abs((x - u * x).norm() - (alpha - beta).norm() * px));
      }
      // Collinear branch: beta = phase * alpha.
      const Complex phase = std::exp(Complex(0.0, 2.0 * rng.uniform()));
      const Matrix uc = rotation_unitary(alpha, Vector(phase * alpha));
      coll = std::max(coll, operator_norm(uc - phase * Matrix::Identity(d, d)));
    }
    out.add("rep.rotation_maps", maps, 1e-10);
    out.add("rep.rotation_unitary", unit, 1e-10);
    out.add("rep.rotation_norm", nrm, 1e-9);
    out.add("rep.rotation_displacement", disp, 1e-9);
    out.add("rep.rotation_collinear", coll, 1e-12);
  }
  {  // Surjectivity: every quasi-state is hit by an explicit preimage with a
     // strict essential-rank deficit.
    const int n = resolve_count(config, 200);
    int max_rank = 0;
    for (int bn : desc.block_dims()) max_rank += bn;
    double exact = 0.0, rank_excess = 0.0, membership = 0.0;
    for (int j = 0; j < n; ++j) {
      Rng rng(check_seed(config, 19, j));
      const SampleKind kind = j % 2 == 0 ? SampleKind::State : SampleKind::QuasiState;
      const std::optional<int> rank =
          j % 4 < 2 ? std::nullopt : std::optional<int>(1 + j % max_rank);
      const Functional phi = random_functional(desc, check_seed(config, 20, j), kind, rank);
      const Vector xi = random_unit_vector(d, rng);
      const Representation pre = embed_preimage(phi, xi, d);
      exact = std::max(exact, qstate_distance(theta(pre, xi), phi));
      rank_excess = std::max(rank_excess,
                             static_cast<double>(numerical_rank(pre.unit_image()) - (d - 1)));
      const double nrm = functional_norm(phi);
      const bool member = membership_rep_xi(pre, xi, 1e-9);
      if (std::abs(nrm - 1.0) <= 1e-9) {
        membership = std::max(membership, member ? 0.0 : 1.0);
      } else if (nrm < 1.0 - 1e-6) {
        membership = std::max(membership, member ? 1.0 : 0.0);
      }
    }
    out.add("rep.surjectivity", exact, 1e-9);
    out.add("rep.preimage_rank_excess", std::max(rank_excess, 0.0), 0.0);
    out.add("rep.membership_consistency", membership, 0.0);
  }
  {  // Conjugation identity: theta(U^-1 pi U, xi) = theta(pi, U xi).
    const int n = resolve_count(config, 100);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      Rng rng(check_seed(config, 21, j));
      const Representation pi = random_representation(desc, d, check_seed(config, 22, j));
      const Matrix u = haar_unitary(d, rng);
      const Vector xi = random_unit_vector(d, rng);
      const Vector uxi = u * xi;
      worst = std::max(worst, qstate_distance(theta(conjugate(pi, u), xi),
                                              theta(pi, Vector(uxi / uxi.norm()))));
    }
    out.add("rep.conjugation_theta", worst, 1e-10);
  }
  {  // Local lift: exact at the base point and on shrinking segments.
    const int n = resolve_count(config, 25);
    double self = 0.0, exact = 0.0;
    int unsupported = 0;
    for (int j = 0; j < n; ++j) {
      const LiftTable table = run_lift_table(desc, d, check_seed(config, 23, j), 6);
      if (!table.base_full_rank || table.any_rank_jump) {
        ++unsupported;
        continue;
      }
      self = std::max(self, table.self_distance);
      exact = std::max(exact, table.max_exactness);
    }
    out.add("rep.lift_self_exactness", self, 1e-9);
    out.add("rep.lift_exactness", exact, 1e-9,
            unsupported > 0 ? std::to_string(unsupported) + " rank-jump tables skipped" : "");
  }
  {  // Intertwiner samples are genuine intertwiners; polar factors behave.
    const int n = resolve_count(config, 100);
    const std::vector<IntertwinerSample> samples =
        make_audit_samples(desc, d, check_seed(config, 24, 0), n);
    double integrity = 0.0, factorization = 0.0, factor_defect = 0.0, commutation = 0.0;
    std::uint64_t element_counter = 0;
    for (const IntertwinerSample& sample : samples) {
      integrity = std::max(integrity, intertwiner_defect(sample.s, sample.pi1, sample.pi2));
      const PolarFactors polar =
          polar_decompose_intertwiner(sample.s, sample.pi1, sample.pi2);
      factorization = std::max(
          factorization, operator_norm(sample.s - polar.partial_isometry * polar.positive));
      factor_defect = std::max(factor_defect, intertwiner_defect(polar.partial_isometry,
                                                                 sample.pi1, sample.pi2));
      factor_defect = std::max(factor_defect,
                               intertwiner_defect(polar.positive, sample.pi1, sample.pi1));
      const AlgebraElement a = random_element(desc, mix_seed(check_seed(config, 25, 0),
                                                             element_counter++));
      const Field t = field_from_element(a, d);
      const CommutationReport cr = positive_commutation_check(t, sample.pi1, polar.positive);
      commutation = std::max({commutation, cr.positive_commutator, cr.exponential_commutator});
    }
    out.add("fields.sample_integrity", integrity, 1e-9);
    out.add("fields.polar_factorization", factorization, 1e-10);
    out.add("fields.polar_intertwine", factor_defect, 1e-9);
    out.add("fields.positive_commutation", commutation, 1e-8);
  }
  {  // Element fields stay in the essential corner and pass audits.
    const int n = resolve_count(config, 100);
    const std::vector<IntertwinerSample> samples =
        make_audit_samples(desc, d, check_seed(config, 26, 0), n);
    double sandwich = 0.0, audit_defect = 0.0;
    for (int j = 0; j < 10; ++j) {
      const AlgebraElement a = random_element(desc, check_seed(config, 27, j));
      const Field t = field_from_element(a, d);
      const Representation pi = random_representation(desc, d, check_seed(config, 28, j));
      sandwich = std::max(sandwich, essential_sandwich_check(t, pi));
      audit_defect = std::max(audit_defect, run_audit(t, samples).max_defect);
    }
    out.add("fields.essential_sandwich", sandwich, 1e-10);
    out.add("fields.audit_defect", audit_defect, 1e-9);
  }
  {  // Adversarial fields are rejected with a visible margin.
    const std::vector<IntertwinerSample> samples =
        make_audit_samples(desc, d, check_seed(config, 29, 0), resolve_count(config, 100));
    const AuditReport constant =
        run_audit(adversarial_constant_field(desc, d), samples);
    const AuditReport trace = run_audit(adversarial_trace_field(desc, d), samples);
    const double margin = std::min(constant.max_defect, trace.max_defect);
    out.add("fields.adversarial_margin", std::max(0.0, 0.05 - margin), 0.0,
            constant.pass || trace.pass ? "adversarial field passed the audit" : "");
  }
  {  // Induced affine functions: well defined and matching the pairing.
    const int n = resolve_count(config, 20);
    Rng rng(check_seed(config, 30, 0));
    const Vector xi = random_unit_vector(d, rng);
    double spread = 0.0, consistency = 0.0;
    for (int j = 0; j < n; ++j) {
      const AlgebraElement a = random_element(desc, check_seed(config, 31, j));
      const Field t = field_from_element(a, d);
      const Functional phi =
          random_functional(desc, check_seed(config, 32, j), SampleKind::QuasiState);
      spread = std::max(spread, preimage_spread(t, xi, phi, 10, check_seed(config, 33, j)));
      const AffineFunctionOnQ f = induced_affine(t, xi);
      consistency = std::max(consistency, std::abs(evaluate_affine(f, phi) - pair(phi, a)));
    }
    out.add("fields.well_definedness", spread, 1e-8);
    out.add("fields.affine_consistency", consistency, 1e-9);
  }
  {  // Reconstruction closes the loop in both probe modes.
    const int n = resolve_count(config, 10);
    const std::vector<IntertwinerSample> samples =
        make_audit_samples(desc, d, check_seed(config, 34, 0), 100);
    Rng rng(check_seed(config, 35, 0));
    const Vector xi = random_unit_vector(d, rng);
    double error = 0.0, residual = 0.0;
    for (int j = 0; j < n; ++j) {
      const AlgebraElement a = random_element(desc, check_seed(config, 36, j));
      const Field t = field_from_element(a, d);
      for (ReconstructionMode mode :
           {ReconstructionMode::QuasiStates, ReconstructionMode::StatesOnly}) {
        const Reconstruction rec = reconstruct_element(t, xi, mode, samples);
        error = std::max(error, norm(rec.element - a));
        residual = std::max(residual, rec.residual);
      }
    }
    out.add("fields.reconstruction_error", error, 1e-7);
    out.add("fields.reconstruction_residual", residual, 1e-7);
  }

  finish(report, start);
  return report;
}

Report lift_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = Clock::now();
  Report report;
  report.experiment = "lift-experiment";
  report.config = config;
  SuiteBuilder out(config, report.checks);

  const AlgebraDescriptor desc = config.descriptor();
  const int d = config.resolved_ambient_dim();
  const int rows = resolve_count(config, 12);
  const LiftTable table = run_lift_table(desc, d, config.seed, rows);
  report.lift_table = table.rows;

  if (!table.base_full_rank || table.any_rank_jump) {
    report.note = "unsupported_regime: base or target GNS rank drops below dim(A); "
                  "flagged rows are excluded from exactness and monotonicity";
    out.add("lift.supported_regime", 1.0, 0.0, report.note);
  } else {
    out.add("lift.supported_regime", 0.0, 0.0);
  }
  out.add("lift.self_exactness", table.self_distance, 1e-9);
  out.add("lift.exactness", table.max_exactness, 1e-9);
  out.add("lift.monotone_violations", static_cast<double>(table.monotone_violations), 0.0);

  finish(report, start);
  return report;
}

Report duality_roundtrip(const ExperimentConfig& config) {
  config.validate();
  const auto start = Clock::now();
  Report report;
  report.experiment = "duality-roundtrip";
  report.config = config;
  SuiteBuilder out(config, report.checks);

  const AlgebraDescriptor desc = config.descriptor();
  const int d = config.resolved_ambient_dim();
  const int dim = desc.dim();
  const int elements = resolve_count(config, 100);

  const std::vector<IntertwinerSample> samples =
      make_audit_samples(desc, d, check_seed(config, 101, 0), 100);
  Rng xi_rng(check_seed(config, 102, 0));
  const Vector xi = random_unit_vector(d, xi_rng);

  // Alternate preimages are element-independent; build them once per probe.
  const std::vector<Functional> probes =
      reconstruction_frame(desc, ReconstructionMode::QuasiStates);
  std::vector<Representation> base_preimages;
  std::vector<std::vector<Representation>> alternates;
  for (int k = 0; k < dim; ++k) {
    base_preimages.push_back(embed_preimage(probes[static_cast<size_t>(k)], xi, d));
    alternates.push_back(alternate_preimages(probes[static_cast<size_t>(k)], xi, d, 10,
                                             check_seed(config, 103, k)));
  }

  double err_quasi = 0.0, err_states = 0.0, residual = 0.0, spread = 0.0, audit_defect = 0.0;
  for (int j = 0; j < elements; ++j) {
    const AlgebraElement a = random_element(desc, check_seed(config, 104, j));
    const Field t = field_from_element(a, d);
    const Reconstruction rec_q =
        reconstruct_element(t, xi, ReconstructionMode::QuasiStates, samples);
    const Reconstruction rec_s =
        reconstruct_element(t, xi, ReconstructionMode::StatesOnly, samples);
    err_quasi = std::max(err_quasi, norm(rec_q.element - a));
    err_states = std::max(err_states, norm(rec_s.element - a));
    residual = std::max({residual, rec_q.residual, rec_s.residual});
    audit_defect = std::max(audit_defect, rec_q.audit.max_defect);
    for (int k = 0; k < dim; ++k) {
      const Complex reference = inner(t(base_preimages[static_cast<size_t>(k)]) * xi, xi);
      for (const Representation& alt : alternates[static_cast<size_t>(k)]) {
        spread = std::max(spread, std::abs(inner(t(alt) * xi, xi) - reference));
      }
    }
  }

  // Adversarial fields must fail the audit with margin, and the
  // reconstruction entry point must refuse them.
  int refused = 0;
  double adversarial_margin = 1.0;
  for (const Field& bad : {adversarial_constant_field(desc, d),
                           adversarial_trace_field(desc, d)}) {
    const AuditReport audit = run_audit(bad, samples);
    adversarial_margin = std::min(adversarial_margin, audit.max_defect);
    try {
      reconstruct_element(bad, xi, ReconstructionMode::QuasiStates, samples);
    } catch (const AuditFailure&) {
      ++refused;
    }
  }

  out.add("duality.roundtrip_quasi", err_quasi, 1e-7);
  out.add("duality.roundtrip_states", err_states, 1e-7);
  out.add("duality.residual", residual, 1e-7);
  out.add("duality.spread", spread, 1e-8);
  out.add("duality.audit_defect", audit_defect, 1e-9);
  out.add("duality.adversarial_margin", std::max(0.0, 0.05 - adversarial_margin), 0.0);
  out.add("duality.adversarial_refused", static_cast<double>(2 - refused), 0.0);

  report.extra = nlohmann::json{{"elements", elements},
                                {"max_error_quasi_states", err_quasi},
                                {"max_error_states_only", err_states},
                                {"max_residual", residual},
                                {"max_spread", spread},
                                {"adversarial_min_defect", adversarial_margin},
                                {"adversarial_refusals", refused}};
  finish(report, start);
  return report;
}

Report gns_report(const ExperimentConfig& config) {
  config.validate();
  const auto start = Clock::now();
  Report report;
  report.experiment = "gns";
  report.config = config;
  SuiteBuilder out(config, report.checks);

  Functional phi = Functional::zero(config.descriptor());
  if (!config.functional_file.empty()) {
    std::ifstream in(config.functional_file);
    if (!in) throw UsageError("cannot read functional file: " + config.functional_file);
    nlohmann::json j;
    in >> j;
    phi = functional_from_json(j);
    report.note = "functional loaded from " + config.functional_file;
  } else {
    phi = random_functional(config.descriptor(), check_seed(config, 201, 0),
                            SampleKind::QuasiState);
  }

  const GnsTriple triple = gns(phi);
  const GnsValidation val = validate_gns(triple, phi, 1e-9);
  out.add("gns.morphism", std::max(val.multiplicativity_defect, val.adjoint_defect), 1e-9);
  out.add("gns.reproduction", val.reproduction_defect, 1e-9);
  out.add("gns.vector_norm", val.norm_defect, 1e-10);
  out.add("gns.cyclic_rank_defect",
          static_cast<double>(triple.space_dim - val.cyclic_rank), 0.0);
  out.add("gns.dimension_excess",
          std::max(0.0, static_cast<double>(triple.space_dim - phi.descriptor().dim())), 0.0);

  report.extra = nlohmann::json{{"functional", to_json(phi)},
                                {"triple", to_json(triple)},
                                {"space_dim", triple.space_dim}};
  finish(report, start);
  return report;
}

nlohmann::json describe(const ExperimentConfig& config) {
  config.validate();
  const AlgebraDescriptor desc = config.descriptor();
  nlohmann::json probes = nlohmann::json::array();
  for (const Functional& probe : reconstruction_frame(desc, ReconstructionMode::QuasiStates)) {
    probes.push_back(to_json(probe));
  }
  return nlohmann::json{
      {"schema_version", 1},
      {"algebra", desc.block_dims()},
      {"dim_A", desc.dim()},
      {"min_ambient_dim", desc.min_ambient_dim()},
      {"ambient_dim", config.resolved_ambient_dim()},
      {"basis_order", "block-major; within a block, row-major matrix units"},
      {"reconstruction_frame",
       {{"mode", "quasi_states"},
        {"note", "states-only mode rescales each probe to unit trace"},
        {"probes", std::move(probes)}}},
      {"tol_profiles",
       {{"default", "built-in tolerances"},
        {"strict", "defaults / 100, floored at 1e-14; exact checks stay exact"}}},
      {"experiments", {"verify", "lift-experiment", "duality-roundtrip", "gns", "describe"}}};
}

}  // namespace repq
