#ifndef QSTEER_RNG_HPP
#define QSTEER_RNG_HPP

#include <cstdint>

namespace qsteer {

// splitmix64: counter-based 64-bit generator (Steele, Lea & Flood). The state
// advances by a fixed odd constant and the output is a bijective finalizer of
// the state, so any draw is a pure function of (seed, counter) and streams can
// be sharded by deriving sub-seeds with mix64.
inline constexpr const char* kRngAlgorithm = "splitmix64";

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Sub-seed for an independent stream (one stream per scenario term in the
// sampler; documented so sharded runs reproduce sequential ones).
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(0x51A09CE57F24ADD5ULL + stream));
}

class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t state_;
};

}  // namespace qsteer

#endif
