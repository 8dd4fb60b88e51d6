#pragma once

#include <cstdint>
#include <vector>

namespace hml {

// Hierarchical RNG stream identity: a master seed plus a path of child
// indices.  Substreams extend the path; distinct paths give statistically
// independent streams, and the mapping (key, draw index) -> value is pure,
// so any replicate can be regenerated in isolation.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::vector<std::uint64_t> path;
};

// Returns a key for child `index` of `key` (one level deeper).
StreamKey substream(const StreamKey& key, std::uint64_t index);

// 64-bit mix (splitmix64 finalizer): bijective avalanche on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

// Counter-based uniform generator.  The state advances by a fixed odd
// increment and each output is the finalizer of the state, so the k-th draw
// is a pure function of (key, k).
class Stream {
 public:
  explicit Stream(const StreamKey& key);

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform on (0, 1]: 53-bit resolution, never 0.0, can be exactly 1.0.
  double next_unit() {
    const std::uint64_t z = next_u64();
    return static_cast<double>((z >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t state_ = 0;
};

// Derives the 64-bit root state for a key (exposed for tests).
std::uint64_t derive_state(const StreamKey& key);

}  // namespace hml
