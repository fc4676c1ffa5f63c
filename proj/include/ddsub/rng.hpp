#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>

#include "ddsub/rational.hpp"

namespace ddsub {

// SplitMix64 step (public-domain constants). Used only to spread seeds out
// before they reach the main engine.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic seed for a (seed, stream, counter) triple. Every randomized
// routine in the library takes its engine seed from here, so results depend
// only on the caller-visible parameters and never on scheduling.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t counter = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64_next(s);
  s ^= stream * 0xD1B54A32D192ED03ull;
  h ^= splitmix64_next(s);
  s ^= counter * 0x8CB92BA72F3D8DD7ull;
  h ^= splitmix64_next(s);
  return h;
}

namespace streams {
constexpr std::uint64_t generator = 1;
constexpr std::uint64_t trial = 2;
constexpr std::uint64_t shuffle = 3;
constexpr std::uint64_t experiment_gen = 4;
constexpr std::uint64_t experiment_extract = 5;
}  // namespace streams

// mt19937_64 is fully specified by the C++ standard, so identical seeds give
// identical draw sequences on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased draw from [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % n + 1) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t d = next();
      if (rem == 0 || d <= max - rem) return d % n;
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Bernoulli(p) decided by comparing one raw 64-bit draw against
// floor(p * 2^64). Exactly one draw is consumed per call regardless of p.
class BernoulliSampler {
 public:
  explicit BernoulliSampler(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0,1]");
    always_ = (p == 1);
    if (always_) {
      threshold_ = 0;
    } else {
      const Integer t = (numerator(p) << 64) / denominator(p);
      threshold_ = t.convert_to<std::uint64_t>();
    }
  }

  bool operator()(Rng& rng) const {
    const std::uint64_t draw = rng.next();
    return always_ || draw < threshold_;
  }

 private:
  std::uint64_t threshold_ = 0;
  bool always_ = false;
};

}  // namespace ddsub
