#pragma once

#include <cstdint>

namespace pdwb {

/// SplitMix64 exposed as a little-endian byte stream. Every key stream,
/// synthetic image and attack-side random choice is drawn from this so that
/// a 64-bit seed pins all outputs bit for bit.
class SplitMixStream {
 public:
  explicit SplitMixStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_word() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint8_t next_byte() {
    if (avail_ == 0) {
      buffer_ = next_word();
      avail_ = 8;
    }
    const auto b = static_cast<std::uint8_t>(buffer_ & 0xFFu);
    buffer_ >>= 8;
    --avail_;
    return b;
  }

  /// Four stream bytes, little-endian.
  std::uint32_t next_u32() {
    std::uint32_t v = 0;
    for (unsigned i = 0; i < 4; ++i) v |= std::uint32_t{next_byte()} << (8 * i);
    return v;
  }

  /// Uniform in [0, bound) by rejection on 32-bit draws. bound > 0.
  std::uint32_t uniform_below(std::uint32_t bound) {
    const std::uint64_t span = std::uint64_t{1} << 32;
    const std::uint64_t limit = span - span % bound;
    for (;;) {
      const std::uint32_t v = next_u32();
      if (v < limit) return static_cast<std::uint32_t>(v % bound);
    }
  }

 private:
  std::uint64_t state_;
  std::uint64_t buffer_ = 0;
  unsigned avail_ = 0;
};

}  // namespace pdwb
