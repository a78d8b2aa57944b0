#pragma once

// Counter-based random streams (Philox4x32-10).
//
// A stream's output is a pure function of (seed, stream_index) and the number
// of draws taken so far, so samples can be assigned to streams by sample
// index and reproduced regardless of how work is scheduled.

#include <array>
#include <cstdint>

namespace igeo {

/// One Philox4x32-10 block: 10 rounds over `counter` under `key`.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0)
      : seed_(seed), stream_(stream_index) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  /// Standard normal (Box-Muller on two uniforms).
  double normal();

  /// Independent child stream, deterministic in (seed, stream_index, k).
  RandomStream substream(std::uint64_t k) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

}  // namespace igeo
