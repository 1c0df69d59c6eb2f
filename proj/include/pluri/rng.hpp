#pragma once

#include <cstdint>
#include <vector>

namespace pluri {

// splitmix64 step; also used as the declared seed-derivation mix.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Per-trial seed: seed XOR (index+1)*golden, then mixed. Recorded in reports.
inline std::uint64_t derive_trial_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ ((index + 1) * 0x9E3779B97F4A7C15ull));
}

// Small deterministic generator. Identical output on every platform, which is
// what makes report bytes reproducible; std::uniform_real_distribution is not
// pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = splitmix64(state_);
    return state_;
  }

  // uniform in [0,1)
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

// Values in [lo,hi], pairwise separated by at least min_sep from each other
// and from `existing`. Rejection per value; deterministic given the rng state.
std::vector<double> sample_separated(Rng& rng, std::size_t count, double lo, double hi,
                                     double min_sep,
                                     const std::vector<double>& existing = {});

}  // namespace pluri
