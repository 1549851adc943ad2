#include "cmabsim/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cmabsim {

double beta_sample(Rng& rng, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("beta_sample parameters must be positive");
  }
  std::gamma_distribution<double> ga(a, 1.0);
  std::gamma_distribution<double> gb(b, 1.0);
  const double x = ga(rng);
  const double y = gb(rng);
  double v = x / (x + y);
  const double lo = std::numeric_limits<double>::min();
  const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
  if (!(v > lo)) v = lo;
  if (v > hi) v = hi;
  return v;
}

double half_normal_sample(Rng& rng, double sigma) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (sigma == 0.0) return 0.0;
  std::normal_distribution<double> n(0.0, sigma);
  return std::abs(n(rng));
}

}  // namespace cmabsim
