#pragma once

#include <vector>

namespace cmabsim {

/// Inputs to the regret-bound evaluators. The smoothness function is
/// f(x) = gamma * x^omega; for the coverage environment gamma = |E| and
/// omega = 1.
struct BoundInputs {
  int m = 1;                // number of arms
  double p_star = 0.05;     // minimum arm-triggering probability
  double kappa = 0.0;       // exploration rate (CUCB bound only)
  double gamma = 1.0;       // smoothness scale, > 0
  double omega = 1.0;       // smoothness exponent, in (0,1]
  double nabla_min = 0.0;   // smallest gap, > 0 for gap-dependent bounds
  double nabla_max = 0.0;   // largest gap
  long horizon = 1;

  /// delta = f^{-1}(nabla_min / 2) = (nabla_min / (2 gamma))^(1/omega).
  double delta() const;
  void validate() const;
};

/// eta grid used to approximate the infimum over eta in (0,1):
/// {0.001, 0.002, ..., 0.999}. Every grid point yields a valid bound, so the
/// grid minimum is itself a valid (slightly loose) bound.
std::vector<double> eta_grid();

/// t' = 4c^2/e^2 with c = 1/(p_star (1 - eta))^2.
double threshold_t_prime(double p_star, double eta);

/// t1 = max{4c^2/e^2, 4c0^2/e^2} with c0 = 6 kappa^2 / (delta^2 p_star eta).
double threshold_t1(double p_star, double eta, double kappa, double delta);

/// Gap-dependent regret bounds evaluated at a fixed eta.
double cucb_regret_bound_at_eta(const BoundInputs& in, double eta);
double cts_regret_bound_at_eta(const BoundInputs& in, double eta);

/// Grid minima over eta of the bounds above.
double cucb_regret_bound(const BoundInputs& in);
double cts_regret_bound(const BoundInputs& in);

/// Gap-independent O(T^{1 - omega/2}) bounds; for omega = 1 the horizon
/// factor T^{1-omega/2}/(1-omega/2) equals 2 sqrt(T).
double cucb0_gap_independent_at_eta(const BoundInputs& in, double eta, double horizon);
double cts_gap_independent_at_eta(const BoundInputs& in, double eta, double horizon);

struct GapIndependentBounds {
  BoundInputs inputs;
  double cucb0(double horizon) const;  // grid minimum over eta
  double cts(double horizon) const;
};
GapIndependentBounds gap_independent_bounds(const BoundInputs& in);

/// Largest root t+ of p_star (1 - eta) t = sqrt(t ln t) found by bisection,
/// together with the analytic cap 4c^2/e^2. When 1/(p_star(1-eta))^2 < e the
/// equation has no root on [1, inf) (the linear side dominates everywhere)
/// and t_plus is reported as 0.
struct RootBoundCheck {
  double t_plus = 0.0;
  double cap = 0.0;
};
RootBoundCheck verify_root_bound(double p_star, double eta);

}  // namespace cmabsim
