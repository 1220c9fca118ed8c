#include "ebt/random.hpp"

namespace ebt {

namespace {

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t index)
    : seed_(seed), index_(index), engine_(make_engine(seed, index)) {}

std::uint64_t entropy_seed() {
  std::random_device rd;
  const std::uint64_t high = static_cast<std::uint64_t>(rd()) << 32;
  return high | static_cast<std::uint64_t>(rd());
}

}  // namespace ebt
