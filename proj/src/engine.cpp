#include "ebt/engine.hpp"

#include <algorithm>

#include <omp.h>

#include "ebt/error.hpp"

namespace ebt {

Tally& Tally::operator+=(const Tally& other) {
  trials += other.trials;
  hits += other.hits;
  successes += other.successes;
  for (std::size_t c = 0; c < kMaxCells; ++c) {
    cell_trials[c] += other.cell_trials[c];
    cell_hits[c] += other.cell_hits[c];
  }
  return *this;
}

std::uint64_t partition_count(std::uint64_t n, std::uint64_t partition_size) {
  return n / partition_size + (n % partition_size != 0 ? 1 : 0);
}

void validate_options(const SimOptions& opts) {
  if (opts.n == 0) {
    throw Error(ErrorCode::kInvalidParameters, "simulation.n", "at least one trial is required");
  }
  if (opts.partition_size == 0) {
    throw Error(ErrorCode::kInvalidParameters, "simulation.partition_size", "partition size must be positive");
  }
  if (opts.workers < 0) {
    throw Error(ErrorCode::kInvalidParameters, "workers", "worker count must be nonnegative");
  }
}

namespace {

std::uint64_t partition_length(const SimOptions& opts, std::uint64_t index) {
  const std::uint64_t begin = index * opts.partition_size;
  return std::min(opts.partition_size, opts.n - begin);
}

}  // namespace

std::vector<Tally> run_partitions_serial(const SimOptions& opts, const PartitionKernel& kernel) {
  validate_options(opts);
  const std::uint64_t parts = partition_count(opts.n, opts.partition_size);
  std::vector<Tally> tallies(parts);
  for (std::uint64_t i = 0; i < parts; ++i) {
    RandomStream stream(opts.seed, i);
    tallies[i] = kernel(stream, partition_length(opts, i));
  }
  return tallies;
}

std::vector<Tally> run_partitions_parallel(const SimOptions& opts, const PartitionKernel& kernel) {
  validate_options(opts);
  const auto parts = static_cast<std::int64_t>(partition_count(opts.n, opts.partition_size));
  const int threads = opts.workers > 0 ? opts.workers : omp_get_max_threads();
  std::vector<Tally> tallies(static_cast<std::size_t>(parts));
#pragma omp parallel for num_threads(threads) schedule(dynamic, 1)
  for (std::int64_t i = 0; i < parts; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    RandomStream stream(opts.seed, index);
    tallies[index] = kernel(stream, partition_length(opts, index));
  }
  return tallies;
}

Tally run_partitions(const SimOptions& opts, const PartitionKernel& kernel) {
  const auto tallies = opts.execution == Execution::kSerialReference ? run_partitions_serial(opts, kernel)
                                                                     : run_partitions_parallel(opts, kernel);
  Tally total;
  for (const auto& t : tallies) {
    total += t;
  }
  return total;
}

}  // namespace ebt
