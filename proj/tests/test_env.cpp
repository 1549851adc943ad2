#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cmabsim/env.hpp"

using namespace cmabsim;

namespace {

BipartiteInfluenceGraph single_edge(double p) {
  return BipartiteInfluenceGraph({1}, {1}, {Edge{1, 1}}, {p});
}

}  // namespace

TEST_CASE("graph construction validates its inputs") {
  CHECK_THROWS_AS(BipartiteInfluenceGraph({1}, {1}, {Edge{1, 1}, Edge{1, 1}}, {0.5, 0.5}),
                  std::invalid_argument);  // duplicate edge
  CHECK_THROWS_AS(BipartiteInfluenceGraph({1}, {1}, {Edge{2, 1}}, {0.5}),
                  std::invalid_argument);  // unknown movie endpoint
  CHECK_THROWS_AS(BipartiteInfluenceGraph({1}, {1}, {Edge{1, 1}}, {1.5}),
                  std::out_of_range);  // probability outside [0,1]
  CHECK_THROWS_AS(BipartiteInfluenceGraph({1, 1}, {1}, {Edge{1, 1}}, {0.5}),
                  std::invalid_argument);  // duplicate movie id
  CHECK_THROWS_AS(BipartiteInfluenceGraph({1}, {1}, {Edge{1, 1}}, {0.5, 0.5}),
                  std::invalid_argument);  // prob/edge count mismatch
}

TEST_CASE("triggering model bounds p_star") {
  CHECK(TriggeringModel(0.0).trigger_prob(false) == 0.0);  // coverage degenerate
  CHECK(TriggeringModel(0.3).trigger_prob(true) == 1.0);
  CHECK_THROWS_AS(TriggeringModel(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(TriggeringModel(1.1), std::invalid_argument);
}

TEST_CASE("step with deterministic probabilities") {
  Rng rng(1);
  TriggeringModel trig(0.5);

  auto g1 = single_edge(1.0);
  EpochFeedback fb = step(g1, trig, Action({1}), rng);
  REQUIRE(fb.triggered == std::vector<ArmId>{0});
  CHECK(fb.states == std::vector<std::uint8_t>{1});
  CHECK(fb.realized_reward == 1.0);

  auto g0 = single_edge(0.0);
  fb = step(g0, trig, Action({1}), rng);
  REQUIRE(fb.triggered == std::vector<ArmId>{0});
  CHECK(fb.states == std::vector<std::uint8_t>{0});
  CHECK(fb.realized_reward == 0.0);
}

TEST_CASE("reward counts distinct users") {
  // two movies pointing at the same user, both certain
  BipartiteInfluenceGraph g({1, 2}, {9}, {Edge{1, 9}, Edge{2, 9}}, {1.0, 1.0});
  Rng rng(3);
  EpochFeedback fb = step(g, TriggeringModel(0.5), Action({1, 2}), rng);
  CHECK(fb.triggered.size() == 2);
  CHECK(fb.realized_reward == 1.0);
}

TEST_CASE("step rejects an action with an unknown movie") {
  auto g = single_edge(0.5);
  Rng rng(1);
  CHECK_THROWS_AS(step(g, TriggeringModel(0.1), Action({42}), rng),
                  std::invalid_argument);
}

TEST_CASE("expected reward closed form") {
  TriggeringModel trig(0.05);

  auto g1 = single_edge(0.6);
  CHECK(expected_reward(g1, trig, Action({1}), g1.true_means()) ==
        doctest::Approx(0.6).epsilon(1e-12));

  // one user, two in-set edges of probability 1/2 each
  BipartiteInfluenceGraph g2({1, 2}, {9}, {Edge{1, 9}, Edge{2, 9}}, {0.5, 0.5});
  CHECK(expected_reward(g2, trig, Action({1, 2}), g2.true_means()) ==
        doctest::Approx(0.75).epsilon(1e-12));

  // one edge in the action, one outside reachable at p_star
  CHECK(expected_reward(g2, trig, Action({1}), g2.true_means()) ==
        doctest::Approx(1.0 - 0.5 * (1.0 - 0.05 * 0.5)).epsilon(1e-12));

  CHECK_THROWS_AS(
      expected_reward(g2, trig, Action({1}), ExpectationVector({0.1})),
      std::invalid_argument);  // one entry per edge required
}

TEST_CASE("synthetic generator") {
  Rng rng(11);
  auto g = generate_synthetic(2, 3, 1.0, 0.2, 0.8, rng);
  CHECK(g.num_edges() == 6);  // complete bipartite

  Rng rng2(12);
  auto g2 = generate_synthetic(3, 4, 1.0, 0.3, 0.3, rng2);
  for (ArmId a = 0; a < g2.num_edges(); ++a) CHECK(g2.influence_prob(a) == 0.3);

  Rng ra(99), rb(99);
  auto ga = generate_synthetic(10, 20, 0.5, 0.1, 0.9, ra);
  auto gb = generate_synthetic(10, 20, 0.5, 0.1, 0.9, rb);
  REQUIRE(ga.num_edges() == gb.num_edges());
  for (ArmId a = 0; a < ga.num_edges(); ++a) {
    CHECK(ga.edge(a).movie == gb.edge(a).movie);
    CHECK(ga.edge(a).user == gb.edge(a).user);
    CHECK(ga.influence_prob(a) == gb.influence_prob(a));
  }

  CHECK_THROWS_AS(generate_synthetic(2, 2, 0.0, 0.1, 0.9, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(generate_synthetic(2, 2, 0.5, 0.9, 0.1, rng),
                  std::invalid_argument);
}

TEST_CASE("feedback domain equals the triggered set and reward stays bounded") {
  Rng rng(5);
  auto g = generate_synthetic(6, 8, 0.7, 0.1, 0.9, rng);
  TriggeringModel trig(0.3);
  for (int trial = 0; trial < 200; ++trial) {
    EpochFeedback fb = step(g, trig, Action({0, 3}), rng);
    CHECK(fb.states.size() == fb.triggered.size());
    CHECK(std::is_sorted(fb.triggered.begin(), fb.triggered.end()));
    for (ArmId a : fb.triggered) {
      CHECK(a >= 0);
      CHECK(a < g.num_edges());
    }
    CHECK(fb.realized_reward <= g.num_users());
    CHECK(fb.realized_reward >= 0.0);
  }
}

TEST_CASE("monte carlo realized reward matches the closed form") {
  Rng rng(21);
  auto g = generate_synthetic(5, 7, 0.8, 0.1, 0.9, rng);
  TriggeringModel trig(0.1);
  Action action({0, 2});
  const double expect = expected_reward(g, trig, action, g.true_means());

  const int n = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = step(g, trig, action, rng).realized_reward;
    sum += r;
    sumsq += r * r;
  }
  const double mean = sum / n;
  const double var = (sumsq - n * mean * mean) / (n - 1);
  const double se = std::sqrt(var / n);
  CHECK(std::abs(mean - expect) <= 4.0 * se);
}

TEST_CASE("raising one influence probability never lowers the expected reward") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = generate_synthetic(4, 6, 0.7, 0.1, 0.8, rng);
    TriggeringModel trig(0.2);
    Action action({0, 1});
    std::vector<double> probs = g.influence_probs();
    const double before = expected_reward(g, trig, action, ExpectationVector(probs));

    std::uniform_int_distribution<int> pick(0, g.num_edges() - 1);
    const int a = pick(rng);
    std::uniform_real_distribution<double> up(probs[static_cast<std::size_t>(a)], 1.0);
    probs[static_cast<std::size_t>(a)] = up(rng);
    const double after = expected_reward(g, trig, action, ExpectationVector(probs));
    CHECK(after >= before - 1e-12);
  }
}

TEST_CASE("expected reward is |E|-Lipschitz in the sup norm") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    auto g = generate_synthetic(4, 6, 0.7, 0.0, 1.0, rng);
    TriggeringModel trig(0.15);
    Action action({0, 2});
    std::uniform_real_distribution<double> width(0.0, 0.2);
    const double delta = width(rng);

    std::vector<double> p1 = g.influence_probs();
    std::vector<double> p2 = p1;
    std::uniform_real_distribution<double> jitter(-delta, delta);
    for (double& v : p2) v = std::clamp(v + jitter(rng), 0.0, 1.0);

    const double r1 = expected_reward(g, trig, action, ExpectationVector(p1));
    const double r2 = expected_reward(g, trig, action, ExpectationVector(p2));
    CHECK(std::abs(r1 - r2) <= g.num_edges() * delta + 1e-9);
  }
}

TEST_CASE("every arm triggers at frequency p_star or better") {
  Rng rng(51);
  auto g = generate_synthetic(4, 5, 1.0, 0.2, 0.8, rng);
  const double p_star = 0.3;
  TriggeringModel trig(p_star);
  Action action({0});  // everything else relies on the minimum ATP

  const int n = 20000;
  std::vector<long> hits(static_cast<std::size_t>(g.num_edges()), 0);
  for (int i = 0; i < n; ++i) {
    for (ArmId a : step(g, trig, action, rng).triggered) {
      hits[static_cast<std::size_t>(a)] += 1;
    }
  }
  const double sigma = std::sqrt(p_star * (1.0 - p_star) / n);
  for (long h : hits) {
    CHECK(static_cast<double>(h) / n >= p_star - 4.0 * sigma);
  }
}

TEST_CASE("graph text format round-trips values to 1e-9") {
  Rng rng(61);
  auto g = generate_synthetic(6, 9, 0.6, 0.0, 1.0, rng);
  std::stringstream buffer;
  write_graph(buffer, g);
  auto h = read_graph(buffer);
  REQUIRE(h.num_edges() == g.num_edges());
  REQUIRE(h.num_movies() == g.num_movies());
  REQUIRE(h.num_users() == g.num_users());
  for (ArmId a = 0; a < g.num_edges(); ++a) {
    CHECK(h.edge(a).movie == g.edge(a).movie);
    CHECK(h.edge(a).user == g.edge(a).user);
    CHECK(h.influence_prob(a) == doctest::Approx(g.influence_prob(a)).epsilon(1e-9));
  }
}

TEST_CASE("graph reader rejects inconsistent files") {
  std::stringstream bad1("2,1,1\n1,1,0.5\n");  // header says 2 movies
  CHECK_THROWS_AS(read_graph(bad1), std::runtime_error);
  std::stringstream bad2("1,1,1\n1,oops,0.5\n");
  CHECK_THROWS_AS(read_graph(bad2), std::runtime_error);
  std::stringstream bad3("");
  CHECK_THROWS_AS(read_graph(bad3), std::runtime_error);
}
