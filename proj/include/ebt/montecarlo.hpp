#pragma once

#include <cstdint>
#include <vector>

#include "ebt/core.hpp"
#include "ebt/engine.hpp"
#include "ebt/stats.hpp"

namespace ebt {

struct CellCount {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  bool operator==(const CellCount&) const = default;
};

struct SimResult {
  std::uint64_t n = 0;
  std::uint64_t hits = 0;
  std::uint64_t successes = 0;  // trials whose second stage succeeded
  double empirical_psp = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;  // Wilson, 99%
  double ci_high = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t partitions = 0;
  std::uint64_t partition_size = 0;
  std::vector<CellCount> cells;

  bool operator==(const SimResult&) const = default;
};

/// Builds a SimResult from merged counts. The first `cell_count` cells are kept.
SimResult summarize(const Tally& tally, const SimOptions& opts, std::size_t cell_count);

/// Abstract simulation: per trial draw outcome k ~ weights, predict success
/// with probability y_k, succeed with probability s_k, all independently.
/// Cells are outcome indices when N <= kMaxCells.
SimResult simulate_trial(const TrialSpec& trial, const Strategy& strat, const SimOptions& opts);

/// PSP by exhaustive enumeration of the 4N atoms (outcome k, pointer inside
/// or outside E_k, success or failure), summing the mass of correct calls.
double brute_force_psp(const TrialSpec& trial, const Strategy& strat);

inline TestVerdict binomial_test_greater(const SimResult& result, double p0) {
  return binomial_test_greater(result.hits, result.n, p0);
}

}  // namespace ebt
