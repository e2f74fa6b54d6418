#pragma once

// Seeding and the pseudorandom stream used to draw contact rules.
//
// These constants are part of the output format: changing any of them
// changes every tournament result. See README.md, "Randomness".

#include <array>
#include <cstdint>
#include <limits>

namespace selfish {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Stream seed for one trial.
///
///   key  = black << 40 | grey << 32 | (sample & 0xffffffff)
///   seed = mix64(mix64(master) + kGoldenGamma * (key + 1))
///
/// For a fixed master seed the map key -> seed is a bijection (odd multiplier,
/// bijective finalizer), so distinct (black, grey, sample) never collide while
/// sample < 2^32.
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, int black_rule, int grey_rule,
                                    std::uint64_t sample_index) {
  const std::uint64_t key = (static_cast<std::uint64_t>(black_rule & 0xff) << 40) |
                            (static_cast<std::uint64_t>(grey_rule & 0xff) << 32) |
                            (sample_index & 0xffffffffULL);
  return mix64(mix64(master_seed) + kGoldenGamma * (key + 1));
}

/// xoshiro256** 1.0 (Blackman, Vigna). State is filled from the seed by
/// successive SplitMix64 outputs.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : s_) {
      x += kGoldenGamma;
      word = mix64(x);
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace selfish
