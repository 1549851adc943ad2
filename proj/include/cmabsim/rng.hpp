#pragma once

#include <cstdint>
#include <random>

namespace cmabsim {

using Rng = std::mt19937_64;

/// SplitMix64 step (Steele/Lea/Flood mixing constants).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based substream derivation: the seed of stream `index` depends
/// only on (master, index), so adding streams never perturbs earlier ones.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t state = master;
  std::uint64_t a = splitmix64(state);
  state = a ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  splitmix64(state);
  return splitmix64(state);
}

inline Rng make_stream(std::uint64_t master, std::uint64_t index) {
  return Rng(derive_seed(master, index));
}

/// Exact Beta(a,b) draw via two Gamma variates. Result is clamped into the
/// open interval (0,1) so downstream [0,1]-vector checks never trip on a
/// rounded endpoint.
double beta_sample(Rng& rng, double a, double b);

/// |N(0, sigma)|; sigma = 0 yields exactly 0.
double half_normal_sample(Rng& rng, double sigma);

}  // namespace cmabsim
