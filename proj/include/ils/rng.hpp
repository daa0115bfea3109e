// SPDX-License-Identifier: Apache-2.0
#ifndef ILS_RNG_HPP
#define ILS_RNG_HPP

#include <cstdint>

namespace ils {

// splitmix64 step; pure 64-bit integer arithmetic, so streams are
// bit-identical across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Deterministic stream keyed by (seed, index). Each keyed stream is
// independent, so samples can be generated in any order (or concurrently)
// with identical results.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t index)
      : state_(splitmix64(seed ^ splitmix64(index + 0x1FE6E5A5D1318EADull))) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), exact via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t min = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = next();
      if (x >= min) return x % bound;
    }
  }

  // Uniform in [lo, hi], inclusive.
  std::int64_t next_in(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span =
        static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());  // full range
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(lo) +
                                     next_below(span));
  }

 private:
  std::uint64_t state_;
};

}  // namespace ils

#endif  // ILS_RNG_HPP
