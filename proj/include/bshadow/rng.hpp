#pragma once

#include <cstdint>
#include <string_view>

namespace bshadow {

// splitmix64: tiny, fast, and bit-for-bit reproducible across platforms,
// which std::uniform_int_distribution is not.
struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n > 0; rejection keeps the tiny modulo bias out
  uint64_t below(uint64_t n) {
    uint64_t limit = ~0ull - (~0ull % n);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }
};

// Stable derivation of per-item seeds: fold a tag into a base seed.
inline uint64_t derive_seed(uint64_t seed, std::string_view tag) {
  uint64_t h = seed ^ 0x9ae16a3b2f90404full;
  for (char c : tag) {
    h ^= static_cast<uint8_t>(c);
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return h;
}

inline uint64_t derive_seed(uint64_t seed, uint64_t n) {
  SplitMix64 m(seed ^ (n * 0xff51afd7ed558ccdull));
  return m.next();
}

}  // namespace bshadow
