#include "ebt/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ebt/error.hpp"

namespace ebt {

SimResult summarize(const Tally& tally, const SimOptions& opts, std::size_t cell_count) {
  SimResult r;
  r.n = tally.trials;
  r.hits = tally.hits;
  r.successes = tally.successes;
  const double n = static_cast<double>(r.n);
  r.empirical_psp = static_cast<double>(r.hits) / n;
  r.std_error = std::sqrt(r.empirical_psp * (1.0 - r.empirical_psp) / n);
  const Interval ci = wilson_interval(r.hits, r.n);
  r.ci_low = ci.low;
  r.ci_high = ci.high;
  r.seed = opts.seed;
  r.partitions = partition_count(opts.n, opts.partition_size);
  r.partition_size = opts.partition_size;
  for (std::size_t c = 0; c < std::min(cell_count, kMaxCells); ++c) {
    r.cells.push_back({tally.cell_trials[c], tally.cell_hits[c]});
  }
  return r;
}

SimResult simulate_trial(const TrialSpec& trial, const Strategy& strat, const SimOptions& opts) {
  if (trial.size() != strat.size()) {
    throw Error(ErrorCode::kLengthMismatch, "y",
                fmt::format("strategy has {} entries, trial has {} outcomes", strat.size(), trial.size()));
  }
  validate_options(opts);

  std::vector<double> cumulative(trial.size());
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < trial.size(); ++k) {
    running += trial[k].weight;
    cumulative[k] = running;
    if (trial[k].weight > 0.0) last_positive = k;
  }
  const bool labelled = trial.size() <= kMaxCells;

  const PartitionKernel kernel = [&](RandomStream& stream, std::uint64_t count) {
    Tally tally;
    for (std::uint64_t t = 0; t < count; ++t) {
      const double u = stream.uniform();
      std::size_t k = 0;
      while (k < last_positive && !(u < cumulative[k])) ++k;
      const bool predict_success = stream.bernoulli(strat[k]);
      const bool success = stream.bernoulli(trial[k].success_prob);
      tally.record(labelled ? k : 0, predict_success == success, success);
    }
    return tally;
  };
  return summarize(run_partitions(opts, kernel), opts, labelled ? trial.size() : 0);
}

double brute_force_psp(const TrialSpec& trial, const Strategy& strat) {
  if (trial.size() != strat.size()) {
    throw Error(ErrorCode::kLengthMismatch, "y",
                fmt::format("strategy has {} entries, trial has {} outcomes", strat.size(), trial.size()));
  }
  double correct = 0.0;
  for (std::size_t k = 0; k < trial.size(); ++k) {
    for (const bool pointer_in_region : {true, false}) {
      for (const bool success : {true, false}) {
        const double mass = trial[k].weight * (pointer_in_region ? strat[k] : 1.0 - strat[k]) *
                            (success ? trial[k].success_prob : 1.0 - trial[k].success_prob);
        // Inside E_k the call is "success".
        if (pointer_in_region == success) correct += mass;
      }
    }
  }
  return correct;
}

}  // namespace ebt
