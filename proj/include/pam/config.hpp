#pragma once

// Experiment configuration: versioned JSON schema, fail-fast validation
// (unknown keys are errors), canonical serialization for hashing, and the
// run manifest written ahead of any results.

#include <cstdint>
#include <string>
#include <vector>

#include "pam/averaging.hpp"
#include "pam/kernels.hpp"
#include "pam/solver.hpp"

namespace pam {

inline constexpr int kConfigSchemaVersion = 1;

struct EstimatorSettings {
  double bandwidth = 0.0; // 0 selects the Silverman rule per R
  int bootstrap = 500;
};

struct ExperimentConfig {
  ModelParams params;          // d, beta, t
  double h = 0.05;
  double dt = 1e-3;
  double margin = 0.0;         // buffer between the largest box and the torus
  std::vector<double> r_values;
  int replicas = 0;
  std::uint64_t master_seed = 1;
  SigmaMode sigma_mode = SigmaMode::empirical;
  EstimatorSettings estimator;
  std::string output_dir = "out";
  bool zero_noise = false;
  bool clamp_negative = false;

  // Full cross-field validation; throws ConfigError with the offending key.
  void validate() const;

  // Derived discretization: the cell count is the smallest power of two
  // whose torus contains the largest box plus the margin; nt = t / dt.
  int n_cells() const;
  int n_steps() const;
  SolverConfig solver_config() const;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);

  // Canonical dump: fixed key order, %.17g numbers. Input to config_hash.
  std::string canonical_text() const;
  std::uint64_t config_hash() const;
};

struct LemmasConfig {
  double beta = 0.5;
  double t = 1.0;
  std::vector<std::string> checks; // subset of known_checks(); must be nonempty
  std::uint64_t qmc_points = 2'000'000;
  int qmc_shifts = 8;
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  static const std::vector<std::string>& known_checks();

  void validate() const;

  static LemmasConfig from_json_text(const std::string& text);
  static LemmasConfig from_json_file(const std::string& path);

  std::string canonical_text() const;
  std::uint64_t config_hash() const;
};

// Written to manifest.json before any result file. Holds only inputs and
// planned outputs, never timings, so re-runs produce identical bytes; wall
// times go to the separate timing.json.
struct RunManifest {
  std::string kind; // "simulate" or "lemmas"
  std::uint64_t config_hash = 0;
  std::string code_version;
  std::uint64_t master_seed = 0;
  std::vector<std::pair<double, int>> per_r_replicas;
  std::vector<std::string> planned_outputs;

  std::string to_json() const;
  void write(const std::string& path) const;
};

} // namespace pam
