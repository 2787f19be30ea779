#pragma once

#include <cstdint>
#include <vector>

namespace irs {

// SplitMix64. Used everywhere instead of <random> engines so that streams
// are identical across standard libraries and platforms.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Uniform integer in [0, n) by rejection; n must be > 0.
  uint64_t next_below(uint64_t n) {
    const uint64_t threshold = (0ULL - n) % n;
    for (;;) {
      const uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Derive an independent stream, e.g. one per (seed, user) pair.
  static Rng derive(uint64_t seed, uint64_t salt) {
    Rng mixer(seed ^ (salt * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL));
    return Rng(mixer.next_u64());
  }

 private:
  uint64_t state_;
};

// In-place Fisher-Yates shuffle with a stable, engine-independent draw order.
template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.next_below(i));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace irs
