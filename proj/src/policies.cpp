#include "cmabsim/policies.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace cmabsim {

double cucb_index(double sample_mean, long plays, double kappa, double epoch) {
  if (plays == 0) return 1.0;
  const double inflation =
      kappa * std::sqrt(3.0 * std::log(epoch) / (2.0 * static_cast<double>(plays)));
  return std::min(sample_mean + inflation, 1.0);
}

CucbState::CucbState(int num_arms, double kappa) : kappa_(kappa) {
  if (num_arms < 1) throw std::invalid_argument("need at least one arm");
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
  play_counts_.assign(static_cast<std::size_t>(num_arms), 0);
  sample_means_.assign(static_cast<std::size_t>(num_arms), 1.0);
}

ExpectationVector CucbState::indices() const {
  std::vector<double> out(play_counts_.size());
  const double t = static_cast<double>(epoch_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = cucb_index(sample_means_[i], play_counts_[i], kappa_, t);
  }
  return ExpectationVector(std::move(out));
}

void CucbState::update(const EpochFeedback& feedback) {
  for (std::size_t n = 0; n < feedback.triggered.size(); ++n) {
    const auto i = static_cast<std::size_t>(feedback.triggered[n]);
    if (i >= play_counts_.size()) {
      throw std::out_of_range("feedback references arm " + std::to_string(i));
    }
    play_counts_[i] += 1;
    const double x = static_cast<double>(feedback.states[n]);
    sample_means_[i] += (x - sample_means_[i]) / static_cast<double>(play_counts_[i]);
  }
  epoch_ += 1;
}

std::string CucbState::snapshot() const {
  std::string out = "cucb";
  char buf[64];
  std::snprintf(buf, sizeof(buf), " %ld %.17g %d\n", epoch_, kappa_, num_arms());
  out += buf;
  for (std::size_t i = 0; i < play_counts_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%ld %.17g\n", play_counts_[i], sample_means_[i]);
    out += buf;
  }
  return out;
}

CucbState CucbState::restore(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  long epoch = 0;
  double kappa = 0.0;
  int m = 0;
  if (!(in >> tag >> epoch >> kappa >> m) || tag != "cucb" || m < 1 || epoch < 1) {
    throw std::invalid_argument("malformed cucb snapshot");
  }
  CucbState state(m, kappa);
  state.epoch_ = epoch;
  for (int i = 0; i < m; ++i) {
    long plays = 0;
    double mean = 0.0;
    if (!(in >> plays >> mean) || plays < 0) {
      throw std::invalid_argument("malformed cucb snapshot row " + std::to_string(i));
    }
    state.play_counts_[static_cast<std::size_t>(i)] = plays;
    state.sample_means_[static_cast<std::size_t>(i)] = mean;
  }
  return state;
}

CtsState::CtsState(int num_arms) {
  if (num_arms < 1) throw std::invalid_argument("need at least one arm");
  successes_.assign(static_cast<std::size_t>(num_arms), 0);
  failures_.assign(static_cast<std::size_t>(num_arms), 0);
}

ExpectationVector CtsState::sample(Rng& rng) const {
  std::vector<double> out(successes_.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = beta_sample(rng, static_cast<double>(successes_[i] + 1),
                         static_cast<double>(failures_[i] + 1));
  }
  return ExpectationVector(std::move(out));
}

void CtsState::update(const EpochFeedback& feedback) {
  for (std::size_t n = 0; n < feedback.triggered.size(); ++n) {
    const auto i = static_cast<std::size_t>(feedback.triggered[n]);
    if (i >= successes_.size()) {
      throw std::out_of_range("feedback references arm " + std::to_string(i));
    }
    const std::uint8_t x = feedback.states[n];
    if (x > 1) {
      throw std::invalid_argument("CTS requires Bernoulli states, got " +
                                  std::to_string(static_cast<int>(x)));
    }
    if (x == 1) {
      successes_[i] += 1;
    } else {
      failures_[i] += 1;
    }
  }
  epoch_ += 1;
}

std::string CtsState::snapshot() const {
  std::string out = "cts";
  char buf[64];
  std::snprintf(buf, sizeof(buf), " %ld %d\n", epoch_, num_arms());
  out += buf;
  for (std::size_t i = 0; i < successes_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%ld %ld\n", successes_[i], failures_[i]);
    out += buf;
  }
  return out;
}

CtsState CtsState::restore(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  long epoch = 0;
  int m = 0;
  if (!(in >> tag >> epoch >> m) || tag != "cts" || m < 1 || epoch < 1) {
    throw std::invalid_argument("malformed cts snapshot");
  }
  CtsState state(m);
  state.epoch_ = epoch;
  for (int i = 0; i < m; ++i) {
    long s = 0, f = 0;
    if (!(in >> s >> f) || s < 0 || f < 0) {
      throw std::invalid_argument("malformed cts snapshot row " + std::to_string(i));
    }
    state.successes_[static_cast<std::size_t>(i)] = s;
    state.failures_[static_cast<std::size_t>(i)] = f;
  }
  return state;
}

double estimate_deviation(const ExpectationVector& estimates,
                          const ExpectationVector& mu) {
  if (estimates.size() != mu.size()) {
    throw std::invalid_argument("estimate and mean vectors differ in length");
  }
  double worst = 0.0;
  for (int i = 0; i < mu.size(); ++i) {
    worst = std::max(worst, std::abs(mu[i] - estimates[i]));
  }
  return worst;
}

}  // namespace cmabsim
