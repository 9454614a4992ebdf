// Experiment harness: seeded check suites over a configured algebra and
// ambient dimension, with tolerance profiles and JSON reports.
#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

#include "repq/fields.hpp"

namespace repq {

// Invalid configuration; the CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::vector<int> block_dims{2, 1};
  int ambient_dim = 0;                  // 0 resolves to dim(A) + 1
  std::uint64_t seed = 0;
  int samples = 0;                      // 0 keeps per-check defaults
  std::string tol_profile = "default";  // "default" or "strict"
  std::map<std::string, double> tolerance_overrides;
  std::string functional_file;          // optional input for the gns experiment

  void validate() const;                // throws UsageError
  AlgebraDescriptor descriptor() const;
  int resolved_ambient_dim() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);

// Tolerance of a named check: explicit overrides win; the strict profile
// tightens positive defaults by a factor 100 (floored at 1e-14) and keeps
// exact (zero) tolerances exact.
double tolerance_for(const ExperimentConfig& config, const std::string& check,
                     double default_tolerance);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

struct LiftRow {
  int step = 0;                  // n: the target is phi + 2^-n (psi - phi)
  double target_distance = 0.0;  // qstate_distance(target_n, phi)
  double rep_distance = 0.0;     // rep_distance(lifted_n, base)
  double exactness = 0.0;        // qstate_distance(theta(lifted_n, xi), target_n)
  double lambda = 0.0;           // residual-direction scaling used by the lift
  bool rank_jump = false;        // target GNS rank differs from the base rank
};

struct Report {
  int schema_version = 1;
  std::string experiment;
  ExperimentConfig config;
  std::vector<CheckResult> checks;
  std::vector<LiftRow> lift_table;  // lift experiment only
  nlohmann::json extra;             // experiment-specific payload
  std::string note;
  double wall_ms = 0.0;
  bool pass = false;
};

nlohmann::json report_to_json(const Report& report);

struct LiftTable {
  std::vector<LiftRow> rows;
  bool base_full_rank = true;   // GNS rank of the base equals dim(A)
  bool any_rank_jump = false;
  double self_distance = 0.0;   // rep distance of the lift back to phi itself
  double max_exactness = 0.0;   // over rows without rank jumps
  int monotone_violations = 0;  // rep_distance increases among unflagged rows n >= 3
};

// One seeded shrinking-segment lift experiment: base pair from the canonical
// preimage of a seeded quasi-state, targets phi + 2^-n (psi - phi).
LiftTable run_lift_table(const AlgebraDescriptor& descriptor, int ambient_dim,
                         std::uint64_t seed, int rows);

Report run_suite(const ExperimentConfig& config);
Report lift_experiment(const ExperimentConfig& config);
Report duality_roundtrip(const ExperimentConfig& config);
Report gns_report(const ExperimentConfig& config);
nlohmann::json describe(const ExperimentConfig& config);

}  // namespace repq
