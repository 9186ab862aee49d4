#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace locstat {

/// Counter-based pseudo-random stream (Philox4x32-10).
///
/// A stream is identified by a 64-bit seed (the Philox key) and a 64-bit
/// stream index (the upper half of the counter). Distinct stream indices give
/// statistically independent sequences, so Monte Carlo replication r uses
/// `RngStream(seed, r)` regardless of which thread runs it. Output depends only
/// on (seed, stream, draw position); it is identical across platforms.
///
/// Satisfies UniformRandomBitGenerator. A stream must not be shared across threads.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform() noexcept;

  /// Standard normal draw (Box-Muller, second variate cached).
  double normal() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

namespace detail {
/// Philox4x32 with 10 rounds; exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept;
}  // namespace detail

/// SplitMix64 finalizer; used to derive sub-seeds deterministically.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace locstat
