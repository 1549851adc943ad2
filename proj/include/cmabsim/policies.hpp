#pragma once

#include <string>
#include <vector>

#include "cmabsim/core.hpp"
#include "cmabsim/rng.hpp"

namespace cmabsim {

/// UCB index for one arm: min{ mean + kappa * sqrt(3 ln t / (2 T)), 1 }.
/// A never-observed arm (plays = 0) keeps its initialization value 1.
double cucb_index(double sample_mean, long plays, double kappa, double epoch);

/// Combinatorial UCB with exploration rate kappa.
///
/// Keeps, per arm, the observation count T_i and the running sample mean
/// mu_hat_i (initialized to 1). indices() produces the estimate vector fed
/// to the approximation oracle; update() folds one epoch of feedback in.
class CucbState {
 public:
  CucbState(int num_arms, double kappa);

  ExpectationVector indices() const;
  void update(const EpochFeedback& feedback);

  int num_arms() const { return static_cast<int>(play_counts_.size()); }
  double kappa() const { return kappa_; }
  long epoch() const { return epoch_; }
  long play_count(ArmId a) const { return play_counts_[static_cast<std::size_t>(a)]; }
  double sample_mean(ArmId a) const { return sample_means_[static_cast<std::size_t>(a)]; }
  const std::vector<long>& play_counts() const { return play_counts_; }
  const std::vector<double>& sample_means() const { return sample_means_; }

  /// Line-oriented counter snapshot for checkpoint/resume; means round-trip
  /// bit-exactly.
  std::string snapshot() const;
  static CucbState restore(const std::string& text);

 private:
  double kappa_ = 0.0;
  long epoch_ = 1;
  std::vector<long> play_counts_;
  std::vector<double> sample_means_;
};

/// Combinatorial Thompson sampling over Bernoulli arm states: per-arm
/// success/failure counts; estimates are Beta(s+1, f+1) draws.
class CtsState {
 public:
  explicit CtsState(int num_arms);

  ExpectationVector sample(Rng& rng) const;
  void update(const EpochFeedback& feedback);

  int num_arms() const { return static_cast<int>(successes_.size()); }
  long epoch() const { return epoch_; }
  long successes(ArmId a) const { return successes_[static_cast<std::size_t>(a)]; }
  long failures(ArmId a) const { return failures_[static_cast<std::size_t>(a)]; }
  long observations(ArmId a) const { return successes(a) + failures(a); }
  const std::vector<long>& success_counts() const { return successes_; }
  const std::vector<long>& failure_counts() const { return failures_; }

  std::string snapshot() const;
  static CtsState restore(const std::string& text);

 private:
  long epoch_ = 1;
  std::vector<long> successes_;
  std::vector<long> failures_;
};

/// Estimate-quality diagnostic: max_i |mu_i - estimates_i|. With UCB indices
/// this is the Delta^kappa statistic, with Thompson samples Delta^nu.
double estimate_deviation(const ExpectationVector& estimates,
                          const ExpectationVector& mu);

}  // namespace cmabsim
