#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace delo {

/// Counter-based random stream. Draw i of stream (seed, stream_id) is a pure
/// function of (seed, stream_id, i), so streams can be consumed on any thread
/// in any order without changing results.
class KeyedStream {
 public:
  KeyedStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t next() noexcept;
  /// Uniform on [0, 1).
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;
  /// Standard normal via Box-Muller.
  double normal() noexcept;
  /// Uniform on {0, ..., bound-1}; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  std::uint64_t draws() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes several words into one 64-bit key.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept;

/// Fisher-Yates permutation of 0..n-1 driven by a KeyedStream.
std::vector<std::uint32_t> random_permutation(std::uint32_t n, std::uint64_t seed);

}  // namespace delo
