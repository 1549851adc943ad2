#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cmabsim {

/// Dense arm index. Arms are the edges of the bipartite influence graph,
/// numbered [0, m) in edge-list order.
using ArmId = int;

/// Per-arm mean-state vector; every entry is a probability in [0,1].
/// Used both for ground-truth means and for policy estimates.
class ExpectationVector {
 public:
  explicit ExpectationVector(std::vector<double> values);

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return values_; }

  bool operator==(const ExpectationVector&) const = default;

 private:
  std::vector<double> values_;
};

/// Text form with 17 significant digits; round-trips bit-exactly.
std::string format_expectation_vector(const ExpectationVector& v);
ExpectationVector parse_expectation_vector(const std::string& line);

/// A super-arm: the set of movies recommended in one epoch.
/// Stored sorted ascending; duplicate ids are rejected.
class Action {
 public:
  Action() = default;
  explicit Action(std::vector<int> movies);

  bool contains(int movie) const;
  int size() const { return static_cast<int>(movies_.size()); }
  bool empty() const { return movies_.empty(); }
  const std::vector<int>& movies() const { return movies_; }

  /// "3|7|12" (ids joined by '|'); empty set renders as "-".
  std::string to_string() const;

  bool operator==(const Action&) const = default;
  auto operator<=>(const Action&) const = default;

 private:
  std::vector<int> movies_;
};

/// What the learner sees at the end of one epoch: the triggered arms,
/// their Bernoulli states (aligned with `triggered`), and the realized
/// reward (number of distinct attracted users).
struct EpochFeedback {
  std::vector<ArmId> triggered;
  std::vector<std::uint8_t> states;
  double realized_reward = 0.0;
};

/// Shared experiment parameters.
struct ProblemParams {
  double p_star = 0.05;  // minimum arm-triggering probability, must be > 0
  int k = 1;             // action budget
  double kappa = 0.0;    // exploration rate
  double alpha = 1.0;    // oracle approximation ratio
  double beta = 1.0;     // oracle success probability
  long horizon = 1;
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument on violation
};

}  // namespace cmabsim
