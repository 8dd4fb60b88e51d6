#include "hml/stream.hpp"

namespace hml {

namespace {
// Feeds one word into the running hash.  The odd constant decorrelates the
// word from the accumulator before the bijective finalizer is applied.
std::uint64_t absorb(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ (mix64(v + 0x9E3779B97F4A7C15ULL) + (h << 6) + (h >> 2)));
}
}  // namespace

std::uint64_t derive_state(const StreamKey& key) {
  std::uint64_t h = mix64(key.master_seed + 0x243F6A8885A308D3ULL);
  for (std::uint64_t e : key.path) h = absorb(h, e);
  return h;
}

StreamKey substream(const StreamKey& key, std::uint64_t index) {
  StreamKey child = key;
  child.path.push_back(index);
  return child;
}

Stream::Stream(const StreamKey& key) : state_(derive_state(key)) {}

}  // namespace hml
