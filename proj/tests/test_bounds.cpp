#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cmabsim/bounds.hpp"

using namespace cmabsim;

namespace {

// Pinned parameter set for the closed-form fixtures. The expected values
// were produced by an independent high-precision evaluation of the formulas
// and frozen here before the implementation existed.
BoundInputs pinned() {
  BoundInputs in;
  in.m = 10;
  in.p_star = 0.5;
  in.kappa = 0.0;
  in.gamma = 10.0;
  in.omega = 1.0;
  in.nabla_min = 1.0;
  in.nabla_max = 1.0;
  in.horizon = 3000;
  return in;
}

constexpr double kTPrimeHalfHalf = 138.5833300342914;       // 1024 / e^2
constexpr double kCucbGapBoundNoExplore = 22771.634948729870;         // at eta = 0.5
constexpr double kCucbGapBoundExplore = 90527.293091577070;        // kappa = 0.01, eta = 0.5
constexpr double kCtsGapBound = 185634.93238955319;             // at eta = 0.5
constexpr double kCucb0IndepAt3000 = 175700.65484427221;           // at eta = 0.5
constexpr double kCucb0IndepAt1 = 3344.3026197048004;
constexpr double kCtsIndepAt3000 = 1824058.8809982440;
constexpr double kCtsIndepAt1 = 33439.068730162547;
constexpr double kRootHalfHalf = 67.36107796577376;         // largest root, c = 16

}  // namespace

TEST_CASE("t' threshold formula") {
  CHECK(threshold_t_prime(0.5, 0.5) ==
        doctest::Approx(kTPrimeHalfHalf).epsilon(1e-12));
  CHECK(threshold_t_prime(0.5, 0.5) ==
        doctest::Approx(1024.0 / std::exp(2.0)).epsilon(1e-15));
  CHECK(threshold_t_prime(0.05, 0.5) ==
        doctest::Approx(1385833.300342914).epsilon(1e-12));
  // p* -> 1, eta -> 0 degenerates to 4/e^2
  CHECK(threshold_t_prime(1.0, 1e-9) ==
        doctest::Approx(4.0 / std::exp(2.0)).epsilon(1e-6));
  CHECK_THROWS_AS(threshold_t_prime(0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(threshold_t_prime(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("t1 threshold formula") {
  // vanishing kappa collapses to t'
  CHECK(threshold_t1(0.5, 0.5, 1e-9, 0.3) ==
        doctest::Approx(threshold_t_prime(0.5, 0.5)).epsilon(1e-12));
  // c0 = c makes both branches coincide: c = 16, pick kappa so c0 = 16
  const double kappa_eq = std::sqrt(16.0 * 0.25 / 6.0);  // delta = 1
  CHECK(threshold_t1(0.5, 0.5, kappa_eq, 1.0) ==
        doctest::Approx(threshold_t_prime(0.5, 0.5)).epsilon(1e-12));
  // direct evaluation: c0 = 2400
  CHECK(threshold_t1(0.5, 0.5, 1.0, 0.1) ==
        doctest::Approx(3118124.9257715564).epsilon(1e-12));
  CHECK_THROWS_AS(threshold_t1(0.5, 0.5, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(threshold_t1(0.5, 0.5, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("gap-dependent closed forms match the frozen fixtures") {
  BoundInputs in = pinned();
  CHECK(in.delta() == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(cucb_regret_bound_at_eta(in, 0.5) ==
        doctest::Approx(kCucbGapBoundNoExplore).epsilon(1e-12));

  BoundInputs explore = pinned();
  explore.kappa = 0.01;
  CHECK(cucb_regret_bound_at_eta(explore, 0.5) ==
        doctest::Approx(kCucbGapBoundExplore).epsilon(1e-12));

  CHECK(cts_regret_bound_at_eta(in, 0.5) ==
        doctest::Approx(kCtsGapBound).epsilon(1e-12));
}

TEST_CASE("gap-independent closed forms match the frozen fixtures") {
  const BoundInputs in = pinned();
  CHECK(cucb0_gap_independent_at_eta(in, 0.5, 3000.0) ==
        doctest::Approx(kCucb0IndepAt3000).epsilon(1e-12));
  CHECK(cucb0_gap_independent_at_eta(in, 0.5, 1.0) ==
        doctest::Approx(kCucb0IndepAt1).epsilon(1e-12));
  CHECK(cts_gap_independent_at_eta(in, 0.5, 3000.0) ==
        doctest::Approx(kCtsIndepAt3000).epsilon(1e-12));
  CHECK(cts_gap_independent_at_eta(in, 0.5, 1.0) ==
        doctest::Approx(kCtsIndepAt1).epsilon(1e-12));
  // empty horizon leaves only the ceil(t') * nabla_max term
  CHECK(cucb0_gap_independent_at_eta(in, 0.5, 0.0) == doctest::Approx(139.0));
}

TEST_CASE("omega = 1 horizon term scales as sqrt(T)") {
  const BoundInputs in = pinned();
  const double lead = cucb0_gap_independent_at_eta(in, 0.5, 0.0);
  const double t1 = cucb0_gap_independent_at_eta(in, 0.5, 1000.0) - lead;
  const double t4 = cucb0_gap_independent_at_eta(in, 0.5, 4000.0) - lead;
  CHECK(t4 == doctest::Approx(2.0 * t1).epsilon(1e-9));
}

TEST_CASE("fractional omega homogeneity") {
  BoundInputs in = pinned();
  in.omega = 0.6;  // doubling T scales the tail by 2^{1 - omega/2}
  const double lead = cts_gap_independent_at_eta(in, 0.4, 0.0);
  const double t1 = cts_gap_independent_at_eta(in, 0.4, 500.0) - lead;
  const double t2 = cts_gap_independent_at_eta(in, 0.4, 1000.0) - lead;
  CHECK(t2 / t1 == doctest::Approx(std::pow(2.0, 1.0 - 0.3)).epsilon(1e-9));
}

TEST_CASE("grid minimum never exceeds any single grid point") {
  const BoundInputs in = pinned();
  const double grid_cucb = cucb_regret_bound(in);
  const double grid_cts = cts_regret_bound(in);
  const GapIndependentBounds gib = gap_independent_bounds(in);
  const double grid_ind = gib.cucb0(3000.0);
  for (double eta : eta_grid()) {
    CHECK(grid_cucb <= cucb_regret_bound_at_eta(in, eta) * (1 + 1e-15));
    CHECK(grid_cts <= cts_regret_bound_at_eta(in, eta) * (1 + 1e-15));
  }
  CHECK(grid_ind <= cucb0_gap_independent_at_eta(in, 0.5, 3000.0));
  CHECK(eta_grid().size() == 999);
  CHECK(eta_grid().front() == doctest::Approx(0.001));
  CHECK(eta_grid().back() == doctest::Approx(0.999));
}

TEST_CASE("zero-exploration bound never exceeds the explored one") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    BoundInputs in = pinned();
    in.m = 1 + static_cast<int>(unif(rng) * 50);
    in.p_star = 0.05 + 0.9 * unif(rng);
    in.gamma = 1.0 + 20.0 * unif(rng);
    in.nabla_min = 0.1 + unif(rng);
    in.nabla_max = in.nabla_min + unif(rng);
    BoundInputs explore = in;
    explore.kappa = 0.01 + unif(rng);
    CHECK(cucb_regret_bound(in) <= cucb_regret_bound(explore) * (1 + 1e-12));
  }
}

TEST_CASE("bounds tighten as the minimum triggering probability grows") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    BoundInputs lo = pinned();
    lo.kappa = trial % 2 == 0 ? 0.0 : 0.02;
    lo.p_star = 0.02 + 0.4 * unif(rng);
    BoundInputs hi = lo;
    hi.p_star = lo.p_star + (1.0 - lo.p_star) * unif(rng);
    const double eta = 0.1 + 0.8 * unif(rng);
    CHECK(cucb_regret_bound_at_eta(hi, eta) <=
          cucb_regret_bound_at_eta(lo, eta) * (1 + 1e-12));
    CHECK(cts_regret_bound_at_eta(hi, eta) <=
          cts_regret_bound_at_eta(lo, eta) * (1 + 1e-12));
    CHECK(cucb0_gap_independent_at_eta(hi, eta, 500.0) <=
          cucb0_gap_independent_at_eta(lo, eta, 500.0) * (1 + 1e-12));
    CHECK(cts_gap_independent_at_eta(hi, eta, 500.0) <=
          cts_gap_independent_at_eta(lo, eta, 500.0) * (1 + 1e-12));
  }
}

TEST_CASE("bounds stay finite and positive; degenerate gaps are rejected") {
  BoundInputs in = pinned();
  CHECK(std::isfinite(cucb_regret_bound(in)));
  CHECK(cucb_regret_bound(in) > 0.0);
  CHECK(std::isfinite(cts_regret_bound(in)));
  CHECK(cts_regret_bound(in) > 0.0);

  BoundInputs degenerate = pinned();
  degenerate.nabla_min = 0.0;
  CHECK_THROWS_AS(cucb_regret_bound(degenerate), std::invalid_argument);
  CHECK_THROWS_AS(cts_regret_bound(degenerate), std::invalid_argument);

  BoundInputs bad = pinned();
  bad.omega = 1.5;
  CHECK_THROWS_AS(cucb0_gap_independent_at_eta(bad, 0.5, 100.0),
                  std::invalid_argument);
}

TEST_CASE("cts bound blows up with large delta") {
  BoundInputs small = pinned();
  small.gamma = 0.1;
  small.nabla_min = 2.0;  // delta = 10
  small.nabla_max = 2.0;
  BoundInputs large = small;
  large.nabla_min = 4.0;  // delta = 20, e^{2 delta} dominates
  large.nabla_max = 4.0;
  CHECK(cts_regret_bound_at_eta(large, 0.5) > cts_regret_bound_at_eta(small, 0.5));
}

TEST_CASE("root of the trigger-count equation stays under the analytic cap") {
  const RootBoundCheck r = verify_root_bound(0.5, 0.5);
  CHECK(r.t_plus == doctest::Approx(kRootHalfHalf).epsilon(1e-9));
  CHECK(r.cap == doctest::Approx(kTPrimeHalfHalf).epsilon(1e-12));
  CHECK(r.t_plus <= r.cap);
  // residual of the defining equation at the reported root
  const double resid = 0.5 * 0.5 * r.t_plus -
                       std::sqrt(r.t_plus * std::log(r.t_plus));
  CHECK(std::abs(resid) < 1e-7);
}

TEST_CASE("degenerate root case: no crossing when c < e") {
  const RootBoundCheck r = verify_root_bound(0.95, 0.01);  // c ~ 1.13
  CHECK(r.t_plus == 0.0);
  CHECK(r.t_plus <= r.cap);
}

TEST_CASE("root bound holds for random parameters") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double p_star = 0.01 + 0.99 * unif(rng);
    const double eta = 0.01 + 0.98 * unif(rng);
    const RootBoundCheck r = verify_root_bound(p_star, eta);
    CHECK(r.t_plus <= r.cap * (1 + 1e-12));
    if (r.t_plus > 0.0) {
      // beyond the largest root the linear side stays on top
      const double c = 1.0 / std::pow(p_star * (1.0 - eta), 2.0);
      for (double scale : {1.01, 2.0, 10.0}) {
        const double t = r.t_plus * scale;
        CHECK(t / c - std::log(t) > -1e-9);
      }
    }
  }
}
