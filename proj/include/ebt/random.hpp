#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace ebt {

/// Seedable, splittable source of uniform variates.
///
/// A stream is identified by (seed, index). The underlying engine is
/// std::mt19937_64 seeded through std::seed_seq from the four 32-bit halves of
/// the pair; both are fully specified by the C++ standard, so a given
/// (seed, index) yields the same sequence on every conforming platform.
/// Floating-point variates are built from the top 53 bits by hand rather than
/// through std::uniform_real_distribution, whose algorithm is unspecified.
///
/// Streams are single-owner. Parallel code derives one substream per
/// partition with `substream()`.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t index = 0);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// True with probability `p`; p = 0 never fires and p = 1 always does.
  bool bernoulli(double p) { return uniform() < p; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t index() const noexcept { return index_; }

  /// Independent stream for (seed(), index).
  RandomStream substream(std::uint64_t index) const { return RandomStream(seed_, index); }

 private:
  std::uint64_t seed_;
  std::uint64_t index_;
  std::mt19937_64 engine_;
};

/// Seed drawn from std::random_device, for runs where the caller supplied none.
std::uint64_t entropy_seed();

}  // namespace ebt
