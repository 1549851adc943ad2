#pragma once

#include <utility>
#include <vector>

#include "cmabsim/core.hpp"
#include "cmabsim/env.hpp"

namespace cmabsim {

/// Gap structure of a problem instance: optimal expected reward, the actions
/// falling short of alpha * r_star (sorted ascending by reward), and their
/// gaps. gaps[l] is non-increasing, so gaps.front() is the largest shortfall.
/// An instance without bad actions has nabla_min = nabla_max = 0.
struct GapProfile {
  double r_star = 0.0;
  std::vector<std::pair<Action, double>> bad_actions;
  std::vector<double> gaps;
  double nabla_min = 0.0;
  double nabla_max = 0.0;
};

/// Greedy marginal-gain maximization for probabilistic maximum coverage,
/// a (1 - 1/e, 1)-approximation. Marginal gains are maintained through
/// incremental per-user not-yet-covered products; ties break toward the
/// smallest movie id and the set is always filled to exactly k movies.
Action greedy_oracle(const BipartiteInfluenceGraph& graph,
                     const TriggeringModel& trig,
                     const ExpectationVector& estimates, int k);

/// Exhaustive optimum over all size-k actions (lexicographically first
/// maximizer). Guarded: refuses instances with more than 10^6 candidate sets.
std::pair<Action, double> exact_oracle(const BipartiteInfluenceGraph& graph,
                                       const TriggeringModel& trig,
                                       const ExpectationVector& mu, int k);

/// Enumerates all size-k actions and classifies those with expected reward
/// below alpha * r_star. Same tractability guard as exact_oracle.
GapProfile gap_profile(const BipartiteInfluenceGraph& graph,
                       const TriggeringModel& trig, const ExpectationVector& mu,
                       int k, double alpha);

/// C(n, k), saturating at slightly above the enumeration guard.
double choose_count(int n, int k);

}  // namespace cmabsim
