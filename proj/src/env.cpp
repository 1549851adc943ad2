#include "cmabsim/env.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cmabsim {

BipartiteInfluenceGraph::BipartiteInfluenceGraph(
    std::vector<int> movie_ids, std::vector<int> user_ids,
    std::vector<Edge> edges, std::vector<double> influence_probs)
    : movie_ids_(std::move(movie_ids)),
      user_ids_(std::move(user_ids)),
      edges_(std::move(edges)),
      influence_probs_(std::move(influence_probs)) {
  if (movie_ids_.empty() || user_ids_.empty()) {
    throw std::invalid_argument("graph needs at least one movie and one user");
  }
  if (edges_.empty()) {
    throw std::invalid_argument("graph needs at least one edge");
  }
  if (influence_probs_.size() != edges_.size()) {
    throw std::invalid_argument("one influence probability per edge required");
  }
  for (std::size_t i = 0; i < movie_ids_.size(); ++i) {
    if (!movie_index_.emplace(movie_ids_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate movie id " + std::to_string(movie_ids_[i]));
    }
  }
  for (std::size_t i = 0; i < user_ids_.size(); ++i) {
    if (!user_index_.emplace(user_ids_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate user id " + std::to_string(user_ids_[i]));
    }
  }
  arms_of_movie_.resize(movie_ids_.size());
  arms_of_user_.resize(user_ids_.size());
  std::set<std::pair<int, int>> seen;
  for (std::size_t a = 0; a < edges_.size(); ++a) {
    const Edge& e = edges_[a];
    auto mi = movie_index_.find(e.movie);
    auto ui = user_index_.find(e.user);
    if (mi == movie_index_.end()) {
      throw std::invalid_argument("edge references unknown movie " + std::to_string(e.movie));
    }
    if (ui == user_index_.end()) {
      throw std::invalid_argument("edge references unknown user " + std::to_string(e.user));
    }
    if (!seen.emplace(e.movie, e.user).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(e.movie) +
                                  "," + std::to_string(e.user) + ")");
    }
    const double p = influence_probs_[a];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::out_of_range("influence probability outside [0,1] on edge " +
                              std::to_string(a));
    }
    arms_of_movie_[static_cast<std::size_t>(mi->second)].push_back(static_cast<ArmId>(a));
    arms_of_user_[static_cast<std::size_t>(ui->second)].push_back(static_cast<ArmId>(a));
    edge_movie_index_.push_back(mi->second);
    edge_user_index_.push_back(ui->second);
  }
}

int BipartiteInfluenceGraph::movie_index(int movie_id) const {
  auto it = movie_index_.find(movie_id);
  if (it == movie_index_.end()) {
    throw std::invalid_argument("unknown movie id " + std::to_string(movie_id));
  }
  return it->second;
}

int BipartiteInfluenceGraph::user_index(int user_id) const {
  auto it = user_index_.find(user_id);
  if (it == user_index_.end()) {
    throw std::invalid_argument("unknown user id " + std::to_string(user_id));
  }
  return it->second;
}

std::vector<char> BipartiteInfluenceGraph::action_mask(const Action& action) const {
  std::vector<char> mask(movie_ids_.size(), 0);
  for (int movie : action.movies()) {
    mask[static_cast<std::size_t>(movie_index(movie))] = 1;
  }
  return mask;
}

TriggeringModel::TriggeringModel(double p_star_value) : p_star(p_star_value) {
  if (!(p_star >= 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("p_star must lie in [0,1]");
  }
}

EpochFeedback step(const BipartiteInfluenceGraph& graph,
                   const TriggeringModel& trig, const Action& action,
                   Rng& rng) {
  const std::vector<char> in_set = graph.action_mask(action);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  EpochFeedback fb;
  std::vector<char> user_attracted(static_cast<std::size_t>(graph.num_users()), 0);
  const int m = graph.num_edges();
  for (ArmId a = 0; a < m; ++a) {
    const double atp = trig.trigger_prob(in_set[static_cast<std::size_t>(graph.movie_index_of_arm(a))] != 0);
    const bool triggered = atp >= 1.0 || unif(rng) < atp;
    if (!triggered) continue;
    const double p = graph.influence_prob(a);
    const std::uint8_t state = (p > 0.0 && unif(rng) < p) ? 1 : 0;
    fb.triggered.push_back(a);
    fb.states.push_back(state);
    if (state == 1) {
      user_attracted[static_cast<std::size_t>(graph.user_index_of_arm(a))] = 1;
    }
  }
  long attracted = 0;
  for (char c : user_attracted) attracted += c;
  fb.realized_reward = static_cast<double>(attracted);
  return fb;
}

double expected_reward(const BipartiteInfluenceGraph& graph,
                       const TriggeringModel& trig, const Action& action,
                       const ExpectationVector& probs) {
  if (probs.size() != graph.num_edges()) {
    throw std::invalid_argument(
        "probability vector size " + std::to_string(probs.size()) +
        " does not match edge count " + std::to_string(graph.num_edges()));
  }
  const std::vector<char> in_set = graph.action_mask(action);
  double total = 0.0;
  for (int u = 0; u < graph.num_users(); ++u) {
    double miss = 1.0;
    for (ArmId a : graph.arms_of_user(u)) {
      const double atp = trig.trigger_prob(in_set[static_cast<std::size_t>(graph.movie_index_of_arm(a))] != 0);
      miss *= 1.0 - atp * probs[a];
    }
    total += 1.0 - miss;
  }
  return total;
}

BipartiteInfluenceGraph generate_synthetic(int num_movies, int num_users,
                                           double edge_density, double prob_lo,
                                           double prob_hi, Rng& rng) {
  if (num_movies < 1 || num_users < 1) {
    throw std::invalid_argument("need at least one movie and one user");
  }
  if (!(edge_density > 0.0 && edge_density <= 1.0)) {
    throw std::invalid_argument("edge_density must lie in (0,1]");
  }
  if (!(prob_lo >= 0.0 && prob_lo <= prob_hi && prob_hi <= 1.0)) {
    throw std::invalid_argument("probability range must satisfy 0 <= lo <= hi <= 1");
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_real_distribution<double> prob(prob_lo, prob_hi);

  constexpr int kMaxAttempts = 10000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<Edge> edges;
    std::vector<double> probs;
    std::vector<char> movie_covered(static_cast<std::size_t>(num_movies), 0);
    std::vector<char> user_covered(static_cast<std::size_t>(num_users), 0);
    for (int i = 0; i < num_movies; ++i) {
      for (int j = 0; j < num_users; ++j) {
        if (edge_density >= 1.0 || unif(rng) < edge_density) {
          edges.push_back(Edge{i, j});
          probs.push_back(prob_lo == prob_hi ? prob_lo : prob(rng));
          movie_covered[static_cast<std::size_t>(i)] = 1;
          user_covered[static_cast<std::size_t>(j)] = 1;
        }
      }
    }
    const bool all_covered =
        std::find(movie_covered.begin(), movie_covered.end(), 0) == movie_covered.end() &&
        std::find(user_covered.begin(), user_covered.end(), 0) == user_covered.end();
    if (!all_covered) continue;

    std::vector<int> movie_ids(static_cast<std::size_t>(num_movies));
    std::vector<int> user_ids(static_cast<std::size_t>(num_users));
    for (int i = 0; i < num_movies; ++i) movie_ids[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < num_users; ++j) user_ids[static_cast<std::size_t>(j)] = j;
    return BipartiteInfluenceGraph(std::move(movie_ids), std::move(user_ids),
                                   std::move(edges), std::move(probs));
  }
  throw std::runtime_error(
      "generate_synthetic: could not produce a graph with no isolated node; "
      "increase edge_density or the node counts");
}

void write_graph(std::ostream& out, const BipartiteInfluenceGraph& graph) {
  out << graph.num_movies() << ',' << graph.num_users() << ','
      << graph.num_edges() << '\n';
  char buf[40];
  for (ArmId a = 0; a < graph.num_edges(); ++a) {
    const Edge& e = graph.edge(a);
    std::snprintf(buf, sizeof(buf), "%.12g", graph.influence_prob(a));
    out << e.movie << ',' << e.user << ',' << buf << '\n';
  }
}

BipartiteInfluenceGraph read_graph(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("graph file is empty");
  }
  int n_movies = 0, n_users = 0, n_edges = 0;
  if (std::sscanf(line.c_str(), "%d,%d,%d", &n_movies, &n_users, &n_edges) != 3) {
    throw std::runtime_error("bad graph header: " + line);
  }
  std::vector<Edge> edges;
  std::vector<double> probs;
  std::set<int> movies, users;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Edge e;
    double p = 0.0;
    if (std::sscanf(line.c_str(), "%d,%d,%lf", &e.movie, &e.user, &p) != 3) {
      throw std::runtime_error("bad graph edge at line " + std::to_string(line_no) +
                               ": " + line);
    }
    edges.push_back(e);
    probs.push_back(p);
    movies.insert(e.movie);
    users.insert(e.user);
  }
  if (static_cast<int>(edges.size()) != n_edges ||
      static_cast<int>(movies.size()) != n_movies ||
      static_cast<int>(users.size()) != n_users) {
    throw std::runtime_error("graph header counts do not match edge list");
  }
  return BipartiteInfluenceGraph(std::vector<int>(movies.begin(), movies.end()),
                                 std::vector<int>(users.begin(), users.end()),
                                 std::move(edges), std::move(probs));
}

void save_graph(const BipartiteInfluenceGraph& graph, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open graph file for writing: " + path);
  write_graph(out, graph);
  if (!out) throw std::runtime_error("failed writing graph file: " + path);
}

BipartiteInfluenceGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

}  // namespace cmabsim
