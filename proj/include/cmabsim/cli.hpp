#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "cmabsim/bounds.hpp"
#include "cmabsim/config.hpp"

namespace cmabsim {

/// Runs the configured experiment; writes <out>/runs.csv and
/// <out>/aggregate.csv and echoes the final mean scaled regret.
int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out,
                 std::ostream& err);

/// Repeats the experiment along one axis (kappa | p_star | k). Writes one
/// aggregate CSV per value plus a combined long-format CSV
/// (axis,value,epoch,mean_scaled,std_scaled).
int cmd_sweep(const ExperimentConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::ostream& out,
              std::ostream& err);

struct IngestOptions {
  std::string ratings_path;
  std::string movies_path;
  std::string out_graph;
  int min_ratings = 200;
  int n_low = 50;
  int n_high = 50;
  int n_random = 100;
  double sc = 0.2;
  double sigma = 0.05;
  std::uint64_t seed = 0;
  bool seed_provided = false;
  long long min_timestamp = std::numeric_limits<long long>::min();
  long long max_timestamp = std::numeric_limits<long long>::max();
  int max_users = 0;  // 0 keeps every user
};

/// Builds the influence graph from a ratings corpus and writes it in the
/// edge-list format; prints |L|, |R|, |E| and the probability range.
int cmd_ingest(const IngestOptions& opt, std::ostream& out, std::ostream& err);

struct BoundsOptions {
  BoundInputs inputs;
  double eta = 0.5;
};

/// Prints the bound-constant table as parameter,value CSV rows. Bounds
/// that need a positive minimum gap render an error value when nabla_min
/// is not positive.
int cmd_bounds(const BoundsOptions& opt, std::ostream& out, std::ostream& err);

}  // namespace cmabsim
