#include "cmabsim/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmabsim {

namespace {

const double kPi = std::acos(-1.0);
const double kE = std::exp(1.0);
const double kESquared = std::exp(2.0);

void check_p_star_eta(double p_star, double eta) {
  if (!(p_star > 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("p_star must lie in (0,1]");
  }
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::invalid_argument("eta must lie in (0,1)");
  }
}

template <typename Fn>
double grid_min(Fn&& value_at_eta) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 999; ++i) {
    best = std::min(best, value_at_eta(static_cast<double>(i) / 1000.0));
  }
  return best;
}

}  // namespace

double BoundInputs::delta() const {
  return std::pow(nabla_min / (2.0 * gamma), 1.0 / omega);
}

void BoundInputs::validate() const {
  if (m < 1) throw std::invalid_argument("arm count m must be >= 1");
  if (!(p_star > 0.0 && p_star <= 1.0)) {
    throw std::invalid_argument("p_star must lie in (0,1]");
  }
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (!(omega > 0.0 && omega <= 1.0)) {
    throw std::invalid_argument("omega must lie in (0,1]");
  }
}

std::vector<double> eta_grid() {
  std::vector<double> grid;
  grid.reserve(999);
  for (int i = 1; i <= 999; ++i) grid.push_back(static_cast<double>(i) / 1000.0);
  return grid;
}

double threshold_t_prime(double p_star, double eta) {
  check_p_star_eta(p_star, eta);
  const double c = 1.0 / ((p_star * (1.0 - eta)) * (p_star * (1.0 - eta)));
  return 4.0 * c * c / kESquared;
}

double threshold_t1(double p_star, double eta, double kappa, double delta) {
  check_p_star_eta(p_star, eta);
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0 for t1");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  const double c0 = 6.0 * kappa * kappa / (delta * delta * p_star * eta);
  return std::max(threshold_t_prime(p_star, eta), 4.0 * c0 * c0 / kESquared);
}

double cucb_regret_bound_at_eta(const BoundInputs& in, double eta) {
  in.validate();
  check_p_star_eta(in.p_star, eta);
  if (!(in.nabla_min > 0.0)) {
    throw std::invalid_argument("nabla_min must be > 0 for the gap-dependent bound");
  }
  const double m = static_cast<double>(in.m);
  const double d = in.delta();
  const double d2 = d * d;
  if (in.kappa > 0.0) {
    const double t1 = threshold_t1(in.p_star, eta, in.kappa, d);
    return in.nabla_max *
           (std::ceil(t1) + (m * kPi * kPi / 3.0) * (2.0 / d2 + 1.5) +
            2.0 * m * (1.0 + 2.0 / (d2 * eta * in.p_star)));
  }
  const double tp = threshold_t_prime(in.p_star, eta);
  return in.nabla_max *
         (std::ceil(tp) + (m * kPi * kPi / 3.0) * (1.0 + 1.0 / (2.0 * d2)) +
          2.0 * m * (1.0 + 1.0 / (2.0 * d2 * eta * in.p_star)));
}

double cts_regret_bound_at_eta(const BoundInputs& in, double eta) {
  in.validate();
  check_p_star_eta(in.p_star, eta);
  if (!(in.nabla_min > 0.0)) {
    throw std::invalid_argument("nabla_min must be > 0 for the gap-dependent bound");
  }
  const double m = static_cast<double>(in.m);
  const double d = in.delta();
  const double d2 = d * d;
  const double swell = 3.0 + std::exp(2.0 * d);
  const double tp = threshold_t_prime(in.p_star, eta);
  return in.nabla_max *
         (std::ceil(tp) + (swell * m * kPi * kPi / 6.0) * (1.0 + 2.0 / d2) +
          swell * m * (1.0 + 2.0 / (d2 * eta * in.p_star)));
}

double cucb_regret_bound(const BoundInputs& in) {
  return grid_min([&](double eta) { return cucb_regret_bound_at_eta(in, eta); });
}

double cts_regret_bound(const BoundInputs& in) {
  return grid_min([&](double eta) { return cts_regret_bound_at_eta(in, eta); });
}

double cucb0_gap_independent_at_eta(const BoundInputs& in, double eta,
                                    double horizon) {
  in.validate();
  check_p_star_eta(in.p_star, eta);
  if (horizon < 0.0) throw std::invalid_argument("horizon must be >= 0");
  const double m = static_cast<double>(in.m);
  const double w = in.omega;
  const double lead = std::ceil(threshold_t_prime(in.p_star, eta)) * in.nabla_max;
  const double coeff =
      in.gamma * std::pow(2.0 * m, w) *
      (std::pow(2.0, w) * std::pow(kPi / (2.0 * eta * in.p_star), w / 2.0) +
       std::pow(3.0, w));
  return lead + coeff * std::pow(horizon, 1.0 - w / 2.0) / (1.0 - w / 2.0);
}

double cts_gap_independent_at_eta(const BoundInputs& in, double eta,
                                  double horizon) {
  in.validate();
  check_p_star_eta(in.p_star, eta);
  if (horizon < 0.0) throw std::invalid_argument("horizon must be >= 0");
  const double m = static_cast<double>(in.m);
  const double w = in.omega;
  const double lead = std::ceil(threshold_t_prime(in.p_star, eta)) * in.nabla_max;
  const double coeff =
      in.gamma * std::pow(2.0 * m * (3.0 + kESquared), w) *
      (std::pow(2.0 * kPi / (eta * in.p_star), w / 2.0) + std::pow(3.0, w));
  return lead + coeff * std::pow(horizon, 1.0 - w / 2.0) / (1.0 - w / 2.0);
}

double GapIndependentBounds::cucb0(double horizon) const {
  return grid_min(
      [&](double eta) { return cucb0_gap_independent_at_eta(inputs, eta, horizon); });
}

double GapIndependentBounds::cts(double horizon) const {
  return grid_min(
      [&](double eta) { return cts_gap_independent_at_eta(inputs, eta, horizon); });
}

GapIndependentBounds gap_independent_bounds(const BoundInputs& in) {
  in.validate();
  return GapIndependentBounds{in};
}

RootBoundCheck verify_root_bound(double p_star, double eta) {
  check_p_star_eta(p_star, eta);
  const double c = 1.0 / ((p_star * (1.0 - eta)) * (p_star * (1.0 - eta)));
  const double cap = 4.0 * c * c / kESquared;

  // phi(t) = t/c - ln t; roots of phi are roots of p*(1-eta) t = sqrt(t ln t)
  // on t >= 1. phi has its minimum at t = c, so no root exists when c < e.
  const auto phi = [c](double t) { return t / c - std::log(t); };
  if (c < kE) return RootBoundCheck{0.0, cap};

  double lo = kE;
  double hi = 10.0 * cap;
  if (phi(lo) > 0.0 || phi(hi) <= 0.0) {
    throw std::runtime_error("root of the triggering-count equation is not bracketed");
  }
  for (int iter = 0; iter < 200 && (hi - lo) > 1e-12 * hi; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (phi(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return RootBoundCheck{0.5 * (lo + hi), cap};
}

}  // namespace cmabsim
