#pragma once

#include <cstdint>
#include <random>

namespace detroute {

// mt19937_64 with hand-rolled draw helpers. std::uniform_*_distribution is
// implementation-defined, which would break the bit-identical-output
// guarantees of the generators, so the mapping from raw engine output to
// values lives here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  std::int64_t uniform_i64(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("uniform_i64: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo);
    if (span == UINT64_MAX) return static_cast<std::int64_t>(next());
    std::uint64_t bound = span + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % bound);
  }

  // Uniform double in [lo, hi] from 53 random bits.
  double uniform_real(double lo, double hi) {
    if (lo > hi) throw std::invalid_argument("uniform_real: empty range");
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  bool bernoulli(double p) { return uniform_real(0.0, 1.0) < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace detroute
