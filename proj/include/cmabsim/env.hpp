#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "cmabsim/core.hpp"
#include "cmabsim/rng.hpp"

namespace cmabsim {

struct Edge {
  int movie = 0;
  int user = 0;
};

/// Weighted bipartite graph G = (L, R, E, p): movies on the left, users on
/// the right, one arm per edge. Immutable after construction.
class BipartiteInfluenceGraph {
 public:
  BipartiteInfluenceGraph(std::vector<int> movie_ids, std::vector<int> user_ids,
                          std::vector<Edge> edges,
                          std::vector<double> influence_probs);

  int num_movies() const { return static_cast<int>(movie_ids_.size()); }
  int num_users() const { return static_cast<int>(user_ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::vector<int>& movie_ids() const { return movie_ids_; }
  const std::vector<int>& user_ids() const { return user_ids_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(ArmId a) const { return edges_[static_cast<std::size_t>(a)]; }
  double influence_prob(ArmId a) const { return influence_probs_[static_cast<std::size_t>(a)]; }
  const std::vector<double>& influence_probs() const { return influence_probs_; }

  /// The ground-truth expectation vector (one entry per arm).
  ExpectationVector true_means() const { return ExpectationVector(influence_probs_); }

  bool has_movie(int movie_id) const { return movie_index_.count(movie_id) > 0; }
  int movie_index(int movie_id) const;  // throws on unknown id
  int user_index(int user_id) const;

  const std::vector<ArmId>& arms_of_movie(int movie_idx) const { return arms_of_movie_[static_cast<std::size_t>(movie_idx)]; }
  const std::vector<ArmId>& arms_of_user(int user_idx) const { return arms_of_user_[static_cast<std::size_t>(user_idx)]; }

  /// Dense endpoint indices per arm, precomputed for the per-epoch loops.
  int movie_index_of_arm(ArmId a) const { return edge_movie_index_[static_cast<std::size_t>(a)]; }
  int user_index_of_arm(ArmId a) const { return edge_user_index_[static_cast<std::size_t>(a)]; }

  /// Per-movie-index membership mask for an action; throws on unknown movie.
  std::vector<char> action_mask(const Action& action) const;

 private:
  std::vector<int> movie_ids_;
  std::vector<int> user_ids_;
  std::vector<Edge> edges_;
  std::vector<double> influence_probs_;
  std::unordered_map<int, int> movie_index_;
  std::unordered_map<int, int> user_index_;
  std::vector<std::vector<ArmId>> arms_of_movie_;
  std::vector<std::vector<ArmId>> arms_of_user_;
  std::vector<int> edge_movie_index_;
  std::vector<int> edge_user_index_;
};

/// Triggering distribution of the environment: an edge whose movie is in the
/// action triggers with probability 1, any other edge with probability
/// p_star. p_star = 0 degenerates to plain maximum coverage and is accepted
/// here; the learning problem itself requires p_star > 0 (ProblemParams).
struct TriggeringModel {
  double p_star = 0.05;

  explicit TriggeringModel(double p_star_value);
  double trigger_prob(bool movie_in_action) const {
    return movie_in_action ? 1.0 : p_star;
  }
};

/// One environment epoch: samples the trigger set and the states of the
/// triggered arms, and counts distinct attracted users.
EpochFeedback step(const BipartiteInfluenceGraph& graph,
                   const TriggeringModel& trig, const Action& action,
                   Rng& rng);

/// Closed-form expected reward
///   sum_j ( 1 - prod_{(i,j) in E} (1 - p_S^{i,j} * probs[(i,j)]) )
/// evaluated under an arbitrary per-arm probability vector.
double expected_reward(const BipartiteInfluenceGraph& graph,
                       const TriggeringModel& trig, const Action& action,
                       const ExpectationVector& probs);

/// Random bipartite instance: each (movie,user) pair becomes an edge with
/// probability edge_density, p_{i,j} ~ Uniform[prob_lo, prob_hi]. Redraws the
/// whole edge set until every movie and every user has at least one edge.
BipartiteInfluenceGraph generate_synthetic(int num_movies, int num_users,
                                           double edge_density, double prob_lo,
                                           double prob_hi, Rng& rng);

/// Edge-list text format: header "movies,users,edges" counts, then one line
/// "movie_id,user_id,prob" per edge. Probabilities round-trip to 1e-9.
void write_graph(std::ostream& out, const BipartiteInfluenceGraph& graph);
BipartiteInfluenceGraph read_graph(std::istream& in);
void save_graph(const BipartiteInfluenceGraph& graph, const std::string& path);
BipartiteInfluenceGraph load_graph(const std::string& path);

}  // namespace cmabsim
