#pragma once

#include <cstdint>
#include <string>

#include "cmabsim/harness.hpp"

namespace cmabsim {

/// Experiment configuration: flat key-value text file with '#' comments,
/// fully overridable from the command line. Canonical emitted form is one
/// "key = value" line per key, alphabetically ordered.
struct ExperimentConfig {
  // environment: "synthetic" builds a random instance from the master seed,
  // "file" loads the graph from `graph`.
  std::string env = "synthetic";
  std::string graph;
  int movies = 20;
  int users = 50;
  double density = 0.3;
  double prob_lo = 0.1;
  double prob_hi = 0.6;

  std::string policy = "cucb";  // cucb | cts
  double kappa = 0.0;
  std::string oracle = "greedy";  // greedy | exact
  double alpha = -1.0;            // < 0: default by oracle (greedy: 1-1/e, exact: 1)
  double beta = 1.0;

  double p_star = 0.05;
  int k = 4;
  long horizon = 1000;
  int runs = 1;

  std::uint64_t seed = 0;
  bool seed_provided = false;

  std::string out_dir = ".";
  int jobs = 1;

  double effective_alpha() const;
  RunSpec to_run_spec() const;
  /// Range/consistency checks; also verifies that a referenced graph file
  /// exists. Throws std::invalid_argument / std::runtime_error.
  void validate() const;
};

/// Applies one "key=value" override; throws on unknown keys or bad values.
void apply_config_value(ExperimentConfig& cfg, const std::string& key,
                        const std::string& value);

ExperimentConfig load_config(const std::string& path);

/// Canonical text form; load_config(emit) reproduces the effective config.
std::string emit_config(const ExperimentConfig& cfg);

/// Builds the environment graph named by the config. Synthetic instances are
/// derived from the master seed on a dedicated stream, so the same seed
/// always yields the same instance regardless of the run count.
BipartiteInfluenceGraph build_graph(const ExperimentConfig& cfg);

}  // namespace cmabsim
