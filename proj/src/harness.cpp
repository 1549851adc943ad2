#include "cmabsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "cmabsim/bounds.hpp"
#include "cmabsim/rng.hpp"

namespace cmabsim {

void RunSpec::validate() const {
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0,1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0,1]");
  if (k < 1) throw std::invalid_argument("budget k must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
}

std::vector<long> default_checkpoints(long horizon) {
  std::vector<long> cps;
  for (long t = 1; t < horizon && t > 0; t *= 2) cps.push_back(t);
  cps.push_back(horizon);
  return cps;
}

RegretBaselines compute_baselines(const BipartiteInfluenceGraph& graph,
                                  const TriggeringModel& trig,
                                  const RunSpec& spec) {
  spec.validate();
  const ExpectationVector mu = graph.true_means();
  RegretBaselines b;
  auto [opt_action, opt_value] = exact_oracle(graph, trig, mu, spec.k);
  b.r_star = opt_value;
  if (spec.oracle == OracleKind::greedy) {
    const Action g = greedy_oracle(graph, trig, mu, spec.k);
    b.oracle_reward = expected_reward(graph, trig, g, mu);
  } else {
    b.oracle_reward = opt_value;
  }
  b.scaled_denominator = spec.alpha * spec.beta * b.oracle_reward;
  return b;
}

RunResult run(const BipartiteInfluenceGraph& graph, const TriggeringModel& trig,
              const RunSpec& spec, const RegretBaselines& baselines,
              std::uint64_t seed) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();

  const ExpectationVector mu = graph.true_means();
  const int m = graph.num_edges();
  Rng stream(seed);

  CucbState cucb(m, spec.kappa);
  CtsState cts(m);

  std::vector<long> checkpoints =
      spec.checkpoints.empty() ? default_checkpoints(spec.horizon) : spec.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()),
                    checkpoints.end());
  std::size_t next_cp = 0;

  RunResult result;
  result.seed = seed;
  const long T = spec.horizon;
  result.regret.instantaneous.reserve(static_cast<std::size_t>(T));
  result.regret.cumulative.reserve(static_cast<std::size_t>(T));
  result.regret.actions.reserve(static_cast<std::size_t>(T));
  result.regret.realized.reserve(static_cast<std::size_t>(T));

  const double target = spec.alpha * spec.beta * baselines.r_star;
  std::map<std::vector<int>, double> value_cache;
  double cum = 0.0;

  for (long t = 1; t <= T; ++t) {
    const ExpectationVector estimates =
        spec.policy == PolicyKind::cucb ? cucb.indices() : cts.sample(stream);

    Action action;
    if (spec.oracle == OracleKind::greedy) {
      action = greedy_oracle(graph, trig, estimates, spec.k);
    } else {
      action = exact_oracle(graph, trig, estimates, spec.k).first;
    }

    double reward_mu;
    auto cached = value_cache.find(action.movies());
    if (cached != value_cache.end()) {
      reward_mu = cached->second;
    } else {
      reward_mu = expected_reward(graph, trig, action, mu);
      value_cache.emplace(action.movies(), reward_mu);
    }

    const EpochFeedback feedback = step(graph, trig, action, stream);
    if (spec.policy == PolicyKind::cucb) {
      cucb.update(feedback);
    } else {
      cts.update(feedback);
    }

    const double ir = target - reward_mu;
    cum += ir;
    result.regret.instantaneous.push_back(ir);
    result.regret.cumulative.push_back(cum);
    result.regret.actions.push_back(std::move(action));
    result.regret.realized.push_back(feedback.realized_reward);

    if (next_cp < checkpoints.size() && t == checkpoints[next_cp]) {
      std::vector<long> counts(static_cast<std::size_t>(m));
      for (ArmId a = 0; a < m; ++a) {
        counts[static_cast<std::size_t>(a)] =
            spec.policy == PolicyKind::cucb ? cucb.play_count(a) : cts.observations(a);
      }
      result.trigger_counts.emplace_back(t, std::move(counts));
      ++next_cp;
    }
  }

  result.final_play_counts.resize(static_cast<std::size_t>(m));
  for (ArmId a = 0; a < m; ++a) {
    result.final_play_counts[static_cast<std::size_t>(a)] =
        spec.policy == PolicyKind::cucb ? cucb.play_count(a) : cts.observations(a);
  }
  result.policy_snapshot =
      spec.policy == PolicyKind::cucb ? cucb.snapshot() : cts.snapshot();

  apply_scaling(result.regret, baselines.scaled_denominator);

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void apply_scaling(RegretSeries& series, double scaled_denominator) {
  if (scaled_denominator == 0.0) {
    throw std::invalid_argument("scaling baseline is zero");
  }
  series.scaled.resize(series.cumulative.size());
  for (std::size_t i = 0; i < series.cumulative.size(); ++i) {
    series.scaled[i] = series.cumulative[i] / scaled_denominator;
  }
}

RegretSeries scaled_regret(const RegretSeries& series,
                           const BipartiteInfluenceGraph& graph,
                           const TriggeringModel& trig,
                           const ExpectationVector& mu, int k, double alpha,
                           double beta) {
  const Action g = greedy_oracle(graph, trig, mu, k);
  const double denom = alpha * beta * expected_reward(graph, trig, g, mu);
  RegretSeries out = series;
  apply_scaling(out, denom);
  return out;
}

AggregateSeries aggregate(const std::vector<RunResult>& results) {
  if (results.empty()) throw std::invalid_argument("nothing to aggregate");
  const std::size_t T = results.front().regret.cumulative.size();
  for (const RunResult& r : results) {
    if (r.regret.cumulative.size() != T || r.regret.scaled.size() != T) {
      throw std::invalid_argument("cannot aggregate runs with mixed horizons");
    }
  }
  const double n = static_cast<double>(results.size());
  AggregateSeries agg;
  agg.mean_cum.assign(T, 0.0);
  agg.std_cum.assign(T, 0.0);
  agg.mean_scaled.assign(T, 0.0);
  agg.std_scaled.assign(T, 0.0);
  for (const RunResult& r : results) {
    for (std::size_t t = 0; t < T; ++t) {
      agg.mean_cum[t] += r.regret.cumulative[t];
      agg.mean_scaled[t] += r.regret.scaled[t];
    }
  }
  for (std::size_t t = 0; t < T; ++t) {
    agg.mean_cum[t] /= n;
    agg.mean_scaled[t] /= n;
  }
  if (results.size() > 1) {
    for (const RunResult& r : results) {
      for (std::size_t t = 0; t < T; ++t) {
        const double dc = r.regret.cumulative[t] - agg.mean_cum[t];
        const double ds = r.regret.scaled[t] - agg.mean_scaled[t];
        agg.std_cum[t] += dc * dc;
        agg.std_scaled[t] += ds * ds;
      }
    }
    for (std::size_t t = 0; t < T; ++t) {
      agg.std_cum[t] = std::sqrt(agg.std_cum[t] / (n - 1.0));
      agg.std_scaled[t] = std::sqrt(agg.std_scaled[t] / (n - 1.0));
    }
  }
  return agg;
}

std::vector<ConcentrationPoint> trigger_concentration_check(const std::vector<RunResult>& results,
                                          double eta, double p_star,
                                          const std::vector<long>& checkpoints) {
  if (results.empty()) throw std::invalid_argument("no runs to check");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
  if (!(p_star > 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("p_star must lie in (0,1]");
  }
  const double t_prime = threshold_t_prime(p_star, eta);
  const double m = static_cast<double>(results.front().final_play_counts.size());

  std::vector<ConcentrationPoint> points;
  for (long t : checkpoints) {
    if (static_cast<double>(t) < t_prime) {
      throw std::invalid_argument("checkpoint t=" + std::to_string(t) +
                                  " is below the admissibility threshold t'=" +
                                  std::to_string(t_prime));
    }
    const double bar = eta * p_star * static_cast<double>(t);
    long violating_runs = 0;
    for (const RunResult& r : results) {
      auto it = std::find_if(r.trigger_counts.begin(), r.trigger_counts.end(),
                             [t](const auto& entry) { return entry.first == t; });
      if (it == r.trigger_counts.end()) {
        throw std::invalid_argument("checkpoint t=" + std::to_string(t) +
                                    " was not recorded in a run");
      }
      const bool any_low =
          std::any_of(it->second.begin(), it->second.end(),
                      [bar](long c) { return static_cast<double>(c) <= bar; });
      if (any_low) ++violating_runs;
    }
    points.push_back(ConcentrationPoint{
        t, static_cast<double>(violating_runs) / static_cast<double>(results.size()),
        m / (static_cast<double>(t) * static_cast<double>(t))});
  }
  return points;
}

ExperimentResult run_experiment(const BipartiteInfluenceGraph& graph,
                                const TriggeringModel& trig, const RunSpec& spec,
                                int n_runs, std::uint64_t master_seed, int jobs) {
  if (n_runs < 1) throw std::invalid_argument("need at least one run");
  if (jobs < 1) jobs = 1;

  ExperimentResult result;
  result.baselines = compute_baselines(graph, trig, spec);
  result.runs.resize(static_cast<std::size_t>(n_runs));

  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      const int i = next.fetch_add(1);
      if (i >= n_runs) break;
      result.runs[static_cast<std::size_t>(i)] =
          run(graph, trig, spec, result.baselines,
              derive_seed(master_seed, static_cast<std::uint64_t>(i)));
    }
  };
  if (jobs == 1 || n_runs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const int n_threads = std::min(jobs, n_runs);
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  result.agg = aggregate(result.runs);
  return result;
}

namespace {

void write_double(std::string& row, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  row += buf;
}

}  // namespace

void write_runs_csv(const std::string& path, const std::vector<RunResult>& results) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "run_id,epoch,action,instant_regret,cum_regret,scaled_regret,realized_reward\n";
  for (std::size_t r = 0; r < results.size(); ++r) {
    const RegretSeries& s = results[r].regret;
    for (std::size_t t = 0; t < s.cumulative.size(); ++t) {
      std::string row = std::to_string(r);
      row += ',';
      row += std::to_string(t + 1);
      row += ',';
      row += s.actions[t].to_string();
      row += ',';
      write_double(row, s.instantaneous[t]);
      row += ',';
      write_double(row, s.cumulative[t]);
      row += ',';
      write_double(row, s.scaled.empty() ? 0.0 : s.scaled[t]);
      row += ',';
      write_double(row, s.realized[t]);
      row += '\n';
      out << row;
    }
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

void write_aggregate_csv(const std::string& path, const AggregateSeries& agg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "epoch,mean_cum,std_cum,mean_scaled,std_scaled\n";
  for (std::size_t t = 0; t < agg.mean_cum.size(); ++t) {
    std::string row = std::to_string(t + 1);
    row += ',';
    write_double(row, agg.mean_cum[t]);
    row += ',';
    write_double(row, agg.std_cum[t]);
    row += ',';
    write_double(row, agg.mean_scaled[t]);
    row += ',';
    write_double(row, agg.std_scaled[t]);
    row += '\n';
    out << row;
  }
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace cmabsim
