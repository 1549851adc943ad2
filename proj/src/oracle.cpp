#include "cmabsim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmabsim {

namespace {

constexpr double kEnumerationGuard = 1e6;

// Per-user product of "miss" factors, kept as (product of nonzero factors,
// count of zero factors) so a factor can be divided back out exactly even
// when some factor is 0 (p_star = 1 with estimate 1 produces those).
struct MissProduct {
  double nonzero = 1.0;
  int zeros = 0;

  double value() const { return zeros > 0 ? 0.0 : nonzero; }
  double value_without(double factor) const {
    if (factor == 0.0) return zeros == 1 ? nonzero : 0.0;
    return zeros > 0 ? 0.0 : nonzero / factor;
  }
  void insert(double factor) {
    if (factor == 0.0) {
      ++zeros;
    } else {
      nonzero *= factor;
    }
  }
  void remove(double factor) {
    if (factor == 0.0) {
      --zeros;
    } else {
      nonzero /= factor;
    }
  }
};

// Movie indices ordered by ascending movie id, for deterministic tie-breaks.
std::vector<int> movie_indices_by_id(const BipartiteInfluenceGraph& graph) {
  std::vector<int> order(static_cast<std::size_t>(graph.num_movies()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return graph.movie_ids()[static_cast<std::size_t>(a)] <
           graph.movie_ids()[static_cast<std::size_t>(b)];
  });
  return order;
}

template <typename Fn>
void for_each_combination(int n, int k, Fn&& fn) {
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(pick);
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

void check_enumerable(const BipartiteInfluenceGraph& graph, int k) {
  if (k < 1) throw std::invalid_argument("budget k must be >= 1");
  if (k > graph.num_movies()) {
    throw std::invalid_argument("budget k exceeds the number of movies");
  }
  if (choose_count(graph.num_movies(), k) > kEnumerationGuard) {
    throw std::invalid_argument("instance too large to enumerate: C(|L|,k) > 1e6");
  }
}

}  // namespace

double choose_count(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (c > 10.0 * kEnumerationGuard) return 10.0 * kEnumerationGuard;
  }
  return c;
}

Action greedy_oracle(const BipartiteInfluenceGraph& graph,
                     const TriggeringModel& trig,
                     const ExpectationVector& estimates, int k) {
  if (estimates.size() != graph.num_edges()) {
    throw std::invalid_argument("estimate vector size does not match edge count");
  }
  if (k < 1) throw std::invalid_argument("budget k must be >= 1");
  if (k > graph.num_movies()) {
    throw std::invalid_argument("budget k exceeds the number of movies");
  }

  const double p_star = trig.p_star;
  std::vector<MissProduct> miss(static_cast<std::size_t>(graph.num_users()));
  for (ArmId a = 0; a < graph.num_edges(); ++a) {
    miss[static_cast<std::size_t>(graph.user_index_of_arm(a))].insert(
        1.0 - p_star * estimates[a]);
  }

  const std::vector<int> order = movie_indices_by_id(graph);
  std::vector<char> selected(static_cast<std::size_t>(graph.num_movies()), 0);
  std::vector<int> chosen_ids;
  chosen_ids.reserve(static_cast<std::size_t>(k));

  for (int round = 0; round < k; ++round) {
    int best_idx = -1;
    double best_gain = -1.0;
    for (int mi : order) {
      if (selected[static_cast<std::size_t>(mi)]) continue;
      double gain = 0.0;
      for (ArmId a : graph.arms_of_movie(mi)) {
        const double est = estimates[a];
        const double out_factor = 1.0 - p_star * est;
        const double q = miss[static_cast<std::size_t>(graph.user_index_of_arm(a))]
                             .value_without(out_factor);
        gain += q * est * (1.0 - p_star);
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_idx = mi;
      }
    }
    selected[static_cast<std::size_t>(best_idx)] = 1;
    chosen_ids.push_back(graph.movie_ids()[static_cast<std::size_t>(best_idx)]);
    for (ArmId a : graph.arms_of_movie(best_idx)) {
      const double est = estimates[a];
      auto& mp = miss[static_cast<std::size_t>(graph.user_index_of_arm(a))];
      mp.remove(1.0 - p_star * est);
      mp.insert(1.0 - est);
    }
  }
  return Action(std::move(chosen_ids));
}

std::pair<Action, double> exact_oracle(const BipartiteInfluenceGraph& graph,
                                       const TriggeringModel& trig,
                                       const ExpectationVector& mu, int k) {
  check_enumerable(graph, k);
  const std::vector<int> order = movie_indices_by_id(graph);

  Action best;
  double best_value = -1.0;
  for_each_combination(graph.num_movies(), k, [&](const std::vector<int>& pick) {
    std::vector<int> ids;
    ids.reserve(pick.size());
    for (int pos : pick) {
      ids.push_back(graph.movie_ids()[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])]);
    }
    Action candidate(std::move(ids));
    const double value = expected_reward(graph, trig, candidate, mu);
    if (value > best_value) {
      best_value = value;
      best = std::move(candidate);
    }
  });
  return {best, best_value};
}

GapProfile gap_profile(const BipartiteInfluenceGraph& graph,
                       const TriggeringModel& trig, const ExpectationVector& mu,
                       int k, double alpha) {
  check_enumerable(graph, k);
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0,1]");
  }
  const std::vector<int> order = movie_indices_by_id(graph);

  std::vector<std::pair<Action, double>> all;
  double r_star = -1.0;
  for_each_combination(graph.num_movies(), k, [&](const std::vector<int>& pick) {
    std::vector<int> ids;
    ids.reserve(pick.size());
    for (int pos : pick) {
      ids.push_back(graph.movie_ids()[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])]);
    }
    Action candidate(std::move(ids));
    const double value = expected_reward(graph, trig, candidate, mu);
    r_star = std::max(r_star, value);
    all.emplace_back(std::move(candidate), value);
  });

  GapProfile profile;
  profile.r_star = r_star;
  const double threshold = alpha * r_star;
  for (auto& entry : all) {
    if (entry.second < threshold) profile.bad_actions.push_back(std::move(entry));
  }
  std::sort(profile.bad_actions.begin(), profile.bad_actions.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second < b.second;
              return a.first < b.first;
            });
  profile.gaps.reserve(profile.bad_actions.size());
  for (const auto& [action, reward] : profile.bad_actions) {
    profile.gaps.push_back(threshold - reward);
  }
  if (!profile.gaps.empty()) {
    profile.nabla_max = profile.gaps.front();
    profile.nabla_min = profile.gaps.back();
  }
  return profile;
}

}  // namespace cmabsim
