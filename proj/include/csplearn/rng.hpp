#pragma once

#include <cstdint>

namespace csplearn {

// Deterministic PRNG used by every randomized operation in the library.
//
// Stream discipline: splitmix64 over a 64-bit state. One next_u64() call
// advances the state exactly once; coin() and next_below() consume whole
// draws (next_below may consume several under rejection). Each randomized
// operation documents its own draw order so that identical seed + identical
// call sequence gives identical output on every platform. Standard-library
// distributions are avoided on purpose: their output is not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Fair coin: top bit of one draw.
  bool coin() { return (next_u64() >> 63) != 0; }

  // Uniform integer in [0, n). Unbiased via rejection of the short tail.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t seed_bits() const { return state_; }

  // Independent stream for (seed, trial-index) so parallel trials are
  // schedule-independent.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    Rng mixer(seed ^ (0x6a09e667f3bcc909ull + stream * 0x9e3779b97f4a7c15ull));
    return Rng(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace csplearn
