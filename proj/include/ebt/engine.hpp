#pragma once

// Partitioned trial engine.
//
// n trials are cut into ceil(n / partition_size) partitions. Partition i
// always runs on RandomStream(seed, i) and always covers the same trial
// range, so its tally does not depend on which thread executes it. Tallies
// are merged in partition order. The result is therefore a function of
// (seed, n, partition_size) alone, for any worker count.

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "ebt/random.hpp"

namespace ebt {

inline constexpr std::uint64_t kDefaultPartitionSize = 65536;

/// Upper bound on the number of labelled cells a kernel may report.
inline constexpr std::size_t kMaxCells = 4;

enum class Execution {
  kParallel,         // OpenMP over partitions
  kSerialReference,  // plain loop over partitions, kept for testing
};

struct SimOptions {
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t partition_size = kDefaultPartitionSize;
  int workers = 0;  // 0: OpenMP default
  Execution execution = Execution::kParallel;
};

/// Integer counts gathered by a kernel. `cell_*` break trials down by a
/// kernel-defined label (outcome index, station/spinner pair, ...).
struct Tally {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  std::uint64_t successes = 0;
  std::array<std::uint64_t, kMaxCells> cell_trials{};
  std::array<std::uint64_t, kMaxCells> cell_hits{};

  void record(std::size_t cell, bool hit, bool success) {
    ++trials;
    hits += hit;
    successes += success;
    ++cell_trials[cell];
    cell_hits[cell] += hit;
  }

  Tally& operator+=(const Tally& other);
  bool operator==(const Tally&) const = default;
};

/// Runs `count` trials drawing from `stream`.
using PartitionKernel = std::function<Tally(RandomStream& stream, std::uint64_t count)>;

std::uint64_t partition_count(std::uint64_t n, std::uint64_t partition_size);

/// One tally per partition, computed sequentially.
std::vector<Tally> run_partitions_serial(const SimOptions& opts, const PartitionKernel& kernel);

/// One tally per partition, partitions distributed over OpenMP threads.
std::vector<Tally> run_partitions_parallel(const SimOptions& opts, const PartitionKernel& kernel);

/// Dispatches on opts.execution and merges in partition order.
Tally run_partitions(const SimOptions& opts, const PartitionKernel& kernel);

/// Throws Error(kInvalidParameters) for n = 0 or partition_size = 0.
void validate_options(const SimOptions& opts);

}  // namespace ebt
