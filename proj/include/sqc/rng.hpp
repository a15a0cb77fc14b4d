#pragma once

#include <cstdint>
#include <random>

namespace sqc {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic RNG. Distribution mapping is done by hand (not via <random>
// distributions, which are implementation-defined) so that results are
// bit-identical across platforms and across worker counts. Independent
// streams are derived from (seed, stream) pairs, which lets a simulation
// assign stream = trial index and stay schedule independent.
class Rng {
 public:
  explicit Rng(uint64_t seed) : Rng(seed, 0) {}

  Rng(uint64_t seed, uint64_t stream) {
    uint64_t s = seed;
    uint64_t a = splitmix64(s);
    s ^= 0xa3c59ac2ed9b8b6full * (stream + 1);
    uint64_t b = splitmix64(s);
    engine_.seed(a ^ (b + 0x632be59bd9b4e019ull));
  }

  uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1) with 53 random bits
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // uniform in [0, n), n > 0
  uint64_t uniform(uint64_t n) {
    // rejection sampling on the top bits, unbiased
    uint64_t mask = ~0ull;
    if (n <= 1) return 0;
    uint64_t limit = ~0ull - (~0ull % n + 1) % n;
    uint64_t x;
    do {
      x = next_u64() & mask;
    } while (x > limit);
    return x % n;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sqc
