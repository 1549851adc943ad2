#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cmabsim/core.hpp"
#include "cmabsim/env.hpp"
#include "cmabsim/oracle.hpp"
#include "cmabsim/policies.hpp"

namespace cmabsim {

enum class PolicyKind { cucb, cts };
enum class OracleKind { greedy, exact };

/// Full configuration of one policy-environment loop.
struct RunSpec {
  PolicyKind policy = PolicyKind::cucb;
  double kappa = 0.0;
  OracleKind oracle = OracleKind::greedy;
  double alpha = 1.0;  // approximation ratio entering the regret target
  double beta = 1.0;   // oracle success probability entering the regret target
  int k = 1;
  long horizon = 1;
  std::vector<long> checkpoints;  // empty -> default_checkpoints(horizon)

  void validate() const;
};

/// Powers of two up to the horizon, plus the horizon itself.
std::vector<long> default_checkpoints(long horizon);

/// Per-epoch regret traces. instantaneous[t-1] = alpha*beta*r_star - r_mu(S_t)
/// and may be negative; cumulative is its running sum (never clipped);
/// scaled is the cumulative regret divided by the scaling baseline.
struct RegretSeries {
  std::vector<double> instantaneous;
  std::vector<double> cumulative;
  std::vector<double> scaled;
  std::vector<Action> actions;
  std::vector<double> realized;  // realized rewards, diagnostics only
};

struct RunResult {
  RegretSeries regret;
  /// (t, per-arm observation counts after epoch t), at the recorded
  /// checkpoints; counts are T_i^{t+1} in the concentration statement.
  std::vector<std::pair<long, std::vector<long>>> trigger_counts;
  std::vector<long> final_play_counts;
  std::string policy_snapshot;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
};

/// Regret comparison targets, fixed per instance.
struct RegretBaselines {
  double r_star = 0.0;         // exact optimum of r_mu over size-k actions
  double oracle_reward = 0.0;  // reward of the configured oracle's action on true mu
  double scaled_denominator = 0.0;  // alpha * beta * oracle_reward
};

RegretBaselines compute_baselines(const BipartiteInfluenceGraph& graph,
                                  const TriggeringModel& trig,
                                  const RunSpec& spec);

/// One complete run: per epoch, estimate -> oracle -> environment step ->
/// policy update. Regret is charged against the expected reward of the chosen
/// action under the true means, never the realized reward. Deterministic
/// given (seed, spec, instance).
RunResult run(const BipartiteInfluenceGraph& graph, const TriggeringModel& trig,
              const RunSpec& spec, const RegretBaselines& baselines,
              std::uint64_t seed);

/// Fills series.scaled from series.cumulative; denominator must be nonzero.
void apply_scaling(RegretSeries& series, double scaled_denominator);

/// Standalone scaling per the experiment convention: the denominator is
/// alpha*beta times the reward of the greedy action computed on the true
/// means.
RegretSeries scaled_regret(const RegretSeries& series,
                           const BipartiteInfluenceGraph& graph,
                           const TriggeringModel& trig,
                           const ExpectationVector& mu, int k, double alpha,
                           double beta);

struct AggregateSeries {
  std::vector<double> mean_cum;
  std::vector<double> std_cum;
  std::vector<double> mean_scaled;
  std::vector<double> std_scaled;
};

/// Pointwise mean and sample standard deviation over runs; all runs must
/// share one horizon. A single run aggregates with zero deviation.
AggregateSeries aggregate(const std::vector<RunResult>& results);

struct ConcentrationPoint {
  long t = 0;
  double observed_frequency = 0.0;  // fraction of runs with any undertriggered arm
  double cap = 0.0;                 // m / t^2
};

/// Empirical check of the trigger-count concentration statement: at each
/// checkpoint t, the frequency of the event
///     exists arm i with T_i^{t+1} <= eta * p_star * t
/// against the analytic cap m/t^2. Checkpoints below t' are rejected.
std::vector<ConcentrationPoint> trigger_concentration_check(const std::vector<RunResult>& results,
                                          double eta, double p_star,
                                          const std::vector<long>& checkpoints);

struct ExperimentResult {
  std::vector<RunResult> runs;
  AggregateSeries agg;
  RegretBaselines baselines;
};

/// Runs n_runs independent replicates; per-run streams are derived from the
/// master seed by counter splitting, so results do not depend on `jobs`.
ExperimentResult run_experiment(const BipartiteInfluenceGraph& graph,
                                const TriggeringModel& trig, const RunSpec& spec,
                                int n_runs, std::uint64_t master_seed,
                                int jobs = 1);

/// CSV emission. Columns:
///   runs:      run_id,epoch,action,instant_regret,cum_regret,scaled_regret,realized_reward
///   aggregate: epoch,mean_cum,std_cum,mean_scaled,std_scaled
void write_runs_csv(const std::string& path, const std::vector<RunResult>& results);
void write_aggregate_csv(const std::string& path, const AggregateSeries& agg);

}  // namespace cmabsim
