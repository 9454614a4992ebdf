// Command-line harness: runs seeded experiments and emits JSON reports.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "repq/harness.hpp"

namespace {

using repq::ExperimentConfig;
using repq::Report;
using repq::UsageError;

struct CommonFlags {
  std::optional<std::string> algebra;
  std::optional<int> dim;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<std::string> tol_profile;
  std::optional<std::string> functional_file;
  std::string config_file;
  std::string output_file;
  bool pretty = false;
};

std::vector<int> parse_block_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      size_t used = 0;
      const int value = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      dims.push_back(value);
    } catch (const std::exception&) {
      throw UsageError("cannot parse algebra block list '" + text +
                       "'; expected comma-separated integers like 2,1");
    }
  }
  if (dims.empty()) throw UsageError("algebra block list is empty");
  return dims;
}

// Precedence: explicit flag > config file > REPQ_SEED environment > defaults.
ExperimentConfig build_config(const CommonFlags& flags) {
  ExperimentConfig config;
  if (const char* env = std::getenv("REPQ_SEED")) {
    try {
      config.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("REPQ_SEED must be an unsigned integer");
    }
  }
  if (!flags.config_file.empty()) {
    std::ifstream in(flags.config_file);
    if (!in) throw UsageError("cannot read config file: " + flags.config_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file is not valid JSON: " + std::string(e.what()));
    }
    const std::uint64_t env_seed = config.seed;
    try {
      config = repq::config_from_json(j);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("config file has a malformed field: " + std::string(e.what()));
    }
    if (!j.contains("seed")) config.seed = env_seed;
  }
  if (flags.algebra) config.block_dims = parse_block_dims(*flags.algebra);
  if (flags.dim) config.ambient_dim = *flags.dim;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.samples) config.samples = *flags.samples;
  if (flags.tol_profile) config.tol_profile = *flags.tol_profile;
  if (flags.functional_file) config.functional_file = *flags.functional_file;
  config.validate();
  return config;
}

void emit(const nlohmann::json& payload, const CommonFlags& flags) {
  const std::string text = flags.pretty ? payload.dump(2) : payload.dump();
  if (flags.output_file.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(flags.output_file);
    if (!out) throw UsageError("cannot write output file: " + flags.output_file);
    out << text << '\n';
  }
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags, bool with_functional) {
  cmd->add_option("--algebra", flags.algebra,
                  "Block dimensions, comma separated (default 2,1)");
  cmd->add_option("--dim", flags.dim,
                  "Ambient dimension (default dim(A) + 1; 0 keeps the default)");
  cmd->add_option("--seed", flags.seed, "Base seed (default REPQ_SEED or 0)");
  cmd->add_option("--samples", flags.samples,
                  "Sample-count override; 0 keeps per-check defaults");
  cmd->add_option("--tol-profile", flags.tol_profile,
                  "Tolerance profile: default or strict");
  cmd->add_option("--config", flags.config_file, "JSON config file");
  cmd->add_option("--output", flags.output_file, "Write the JSON report to a file");
  cmd->add_flag("--pretty", flags.pretty, "Pretty-print the JSON output");
  if (with_functional) {
    cmd->add_option("--functional", flags.functional_file,
                    "JSON file with a functional to analyze (default: seeded sample)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repq: representation-space and quasi-state duality toolkit"};
  app.require_subcommand(1);

  CommonFlags flags;
  CLI::App* verify = app.add_subcommand("verify", "Run the full property suite");
  CLI::App* lift = app.add_subcommand("lift-experiment",
                                      "Tabulate local lifts along a shrinking segment");
  CLI::App* duality = app.add_subcommand(
      "duality-roundtrip", "Reconstruct elements from their induced affine functions");
  CLI::App* gns = app.add_subcommand("gns", "Build and validate one cyclic representation");
  CLI::App* describe = app.add_subcommand("describe", "Print conventions and frame data");
  for (CLI::App* cmd : {verify, lift, duality, describe}) {
    add_common_flags(cmd, flags, false);
  }
  add_common_flags(gns, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    const ExperimentConfig config = build_config(flags);
    if (describe->parsed()) {
      emit(repq::describe(config), flags);
      return 0;
    }
    Report report;
    if (verify->parsed()) {
      report = repq::run_suite(config);
    } else if (lift->parsed()) {
      report = repq::lift_experiment(config);
    } else if (duality->parsed()) {
      report = repq::duality_roundtrip(config);
    } else {
      report = repq::gns_report(config);
    }
    emit(repq::report_to_json(report), flags);
    return report.pass ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
