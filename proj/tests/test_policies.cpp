#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "cmabsim/policies.hpp"

using namespace cmabsim;

namespace {

EpochFeedback observe(std::vector<ArmId> arms, std::vector<std::uint8_t> states) {
  EpochFeedback fb;
  fb.triggered = std::move(arms);
  fb.states = std::move(states);
  return fb;
}

}  // namespace

TEST_CASE("ucb index formula") {
  CHECK(cucb_index(0.3, 0, 2.0, 50.0) == 1.0);  // unobserved arm keeps init value
  CHECK(cucb_index(0.37, 5, 0.0, 100.0) == 0.37);
  // kappa=1, mean 1/2, 6 plays, epoch e: inflation sqrt(3/12) = 1/2, capped at 1
  CHECK(cucb_index(0.5, 6, 1.0, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cucb_index(0.9, 1, 5.0, 100.0) == 1.0);  // cap is exact
}

TEST_CASE("cucb state starts optimistic and epoch 1 indices are all one") {
  CucbState s(3, 0.5);
  const ExpectationVector idx = s.indices();
  for (int i = 0; i < 3; ++i) CHECK(idx[i] == 1.0);
  CHECK(s.epoch() == 1);
}

TEST_CASE("cucb update is the running mean") {
  CucbState s(2, 0.0);
  s.update(observe({0}, {0}));  // first observation overwrites the init value
  CHECK(s.play_count(0) == 1);
  CHECK(s.sample_mean(0) == 0.0);
  CHECK(s.sample_mean(1) == 1.0);  // untouched
  CHECK(s.epoch() == 2);

  CucbState t(1, 0.0);
  t.update(observe({0}, {1}));
  t.update(observe({0}, {0}));
  CHECK(t.play_count(0) == 2);
  CHECK(t.sample_mean(0) == 0.5);

  CucbState u(1, 0.0);
  for (std::uint8_t x : {1, 0, 1, 1}) u.update(observe({0}, {x}));
  CHECK(u.sample_mean(0) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("incremental mean tracks the batch mean to 1e-12") {
  std::mt19937_64 rng(17);
  std::bernoulli_distribution coin(0.37);
  for (int trial = 0; trial < 20; ++trial) {
    CucbState s(1, 0.0);
    long ones = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
      const std::uint8_t x = coin(rng) ? 1 : 0;
      ones += x;
      s.update(observe({0}, {x}));
    }
    const double batch = static_cast<double>(ones) / n;
    CHECK(std::abs(s.sample_mean(0) - batch) <= 1e-12);
    CHECK(s.play_count(0) == n);
  }
}

TEST_CASE("indices are monotone in kappa and stay in [0,1]") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double mean = unif(rng);
    const long plays = 1 + static_cast<long>(unif(rng) * 50);
    const double t = 2.0 + unif(rng) * 1000.0;
    const double k1 = unif(rng);
    const double k2 = k1 + unif(rng);
    const double i1 = cucb_index(mean, plays, k1, t);
    const double i2 = cucb_index(mean, plays, k2, t);
    CHECK(i1 <= i2);
    CHECK(i1 >= 0.0);
    CHECK(i2 <= 1.0);
  }
}

TEST_CASE("observation counts do not depend on feedback batching") {
  // the same 30 per-arm observations, grouped differently
  std::mt19937_64 rng(29);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<std::uint8_t>> obs(3);
  for (auto& stream : obs) {
    for (int i = 0; i < 30; ++i) stream.push_back(coin(rng) ? 1 : 0);
  }

  CucbState one_by_one(3, 0.0);
  CtsState cts_one(3);
  for (int i = 0; i < 30; ++i) {
    for (ArmId a = 0; a < 3; ++a) {
      auto fb = observe({a}, {obs[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)]});
      one_by_one.update(fb);
      cts_one.update(fb);
    }
  }
  CucbState batched(3, 0.0);
  CtsState cts_batched(3);
  for (int i = 0; i < 30; ++i) {
    auto fb = observe({0, 1, 2}, {obs[0][static_cast<std::size_t>(i)],
                                  obs[1][static_cast<std::size_t>(i)],
                                  obs[2][static_cast<std::size_t>(i)]});
    batched.update(fb);
    cts_batched.update(fb);
  }

  for (ArmId a = 0; a < 3; ++a) {
    CHECK(one_by_one.play_count(a) == 30);
    CHECK(batched.play_count(a) == 30);
    CHECK(one_by_one.sample_mean(a) == batched.sample_mean(a));
    CHECK(cts_one.observations(a) == 30);
    CHECK(cts_batched.successes(a) == cts_one.successes(a));
    CHECK(cts_batched.failures(a) == cts_one.failures(a));
    CHECK(batched.play_count(a) == cts_batched.observations(a));
  }
}

TEST_CASE("cts counters") {
  CtsState base(1);
  for (std::uint8_t x : {1, 1, 0, 0, 0}) base.update(observe({0}, {x}));
  CHECK(base.successes(0) == 2);
  CHECK(base.failures(0) == 3);

  CtsState success = base;
  success.update(observe({0}, {1}));
  CHECK(success.successes(0) == 3);
  CHECK(success.failures(0) == 3);

  CtsState failure = base;
  failure.update(observe({0}, {0}));
  CHECK(failure.successes(0) == 2);
  CHECK(failure.failures(0) == 4);
}

TEST_CASE("cts rejects non-Bernoulli states and leaves untriggered arms alone") {
  CtsState s(2);
  CHECK_THROWS_AS(s.update(observe({0}, {2})), std::invalid_argument);
  s.update(observe({0}, {1}));
  CHECK(s.successes(1) == 0);
  CHECK(s.failures(1) == 0);
}

TEST_CASE("thompson samples follow the posterior mean") {
  const int n = 100000;

  CtsState fresh(1);  // Beta(1,1)
  Rng rng(101);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const ExpectationVector v = fresh.sample(rng);
    CHECK(v[0] > 0.0);
    CHECK(v[0] < 1.0);
    sum += v[0];
  }
  CHECK(std::abs(sum / n - 0.5) < 0.005);

  CtsState seen(1);  // nine successes, one failure -> Beta(10,2)
  for (int i = 0; i < 9; ++i) seen.update(observe({0}, {1}));
  seen.update(observe({0}, {0}));
  sum = 0.0;
  for (int i = 0; i < n; ++i) sum += seen.sample(rng)[0];
  CHECK(std::abs(sum / n - 10.0 / 12.0) < 0.005);
}

TEST_CASE("thompson sampling is reproducible under a fixed seed") {
  CtsState s(4);
  Rng a(55), b(55);
  for (int i = 0; i < 10; ++i) {
    const ExpectationVector va = s.sample(a);
    const ExpectationVector vb = s.sample(b);
    for (int j = 0; j < 4; ++j) CHECK(va[j] == vb[j]);
  }
}

TEST_CASE("policy snapshots restore counters exactly") {
  std::mt19937_64 rng(67);
  std::bernoulli_distribution coin(0.3);

  CucbState cucb(5, 0.02);
  CtsState cts(5);
  for (int i = 0; i < 200; ++i) {
    const ArmId a = static_cast<ArmId>(i % 5);
    const std::uint8_t x = coin(rng) ? 1 : 0;
    cucb.update(observe({a}, {x}));
    cts.update(observe({a}, {x}));
  }

  CucbState cucb2 = CucbState::restore(cucb.snapshot());
  CHECK(cucb2.epoch() == cucb.epoch());
  CHECK(cucb2.kappa() == cucb.kappa());
  for (ArmId a = 0; a < 5; ++a) {
    CHECK(cucb2.play_count(a) == cucb.play_count(a));
    CHECK(cucb2.sample_mean(a) == cucb.sample_mean(a));
  }

  CtsState cts2 = CtsState::restore(cts.snapshot());
  CHECK(cts2.epoch() == cts.epoch());
  for (ArmId a = 0; a < 5; ++a) {
    CHECK(cts2.successes(a) == cts.successes(a));
    CHECK(cts2.failures(a) == cts.failures(a));
  }

  CHECK_THROWS_AS(CucbState::restore("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(CtsState::restore("cucb 1 0 1\n0 1\n"), std::invalid_argument);
}

TEST_CASE("estimate deviation diagnostic") {
  ExpectationVector mu({0.2, 0.8});
  CHECK(estimate_deviation(ExpectationVector({0.2, 0.8}), mu) == 0.0);
  CHECK(estimate_deviation(ExpectationVector({1.0, 0.7}), mu) ==
        doctest::Approx(0.8).epsilon(1e-12));
  CHECK(estimate_deviation(ExpectationVector({0.0, 1.0}), mu) <= 1.0);
  CHECK_THROWS_AS(estimate_deviation(ExpectationVector({0.1}), mu),
                  std::invalid_argument);
}
