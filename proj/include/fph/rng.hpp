#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fph {

// splitmix64 finalizer; good enough to decorrelate shard seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic per-shard seed derivation so parallel Monte Carlo never
// shares a stream and results do not depend on the thread count.
constexpr std::uint64_t shard_seed(std::uint64_t root, std::uint64_t shard) {
  return mix64(root ^ mix64(shard + 0x517cc1b727220a95ULL));
}

// Seeded stream.  The uniform/exponential mappings are written out here (not
// delegated to std::*_distribution) because the standard leaves those
// algorithms unspecified and we promise bit-reproducible runs per seed.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  // uniform on (0,1): 53-bit mantissa, exact zero redrawn
  double uniform01() {
    for (;;) {
      const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace fph
