#include <doctest.h>

#include <cmath>
#include <vector>

#include "ebt/error.hpp"
#include "ebt/montecarlo.hpp"
#include "ebt/verify.hpp"

using namespace ebt;

namespace {

TrialSpec table_trial() { return validate_trial({{0.2, 0.3}, {0.3, 0.5}, {0.5, 0.7}}); }
Strategy table_strategy() { return Strategy{0.1, 0.9, 0.7}; }

SimOptions options(std::uint64_t n, std::uint64_t seed) {
  SimOptions opts;
  opts.n = n;
  opts.seed = seed;
  return opts;
}

}  // namespace

TEST_CASE("brute force reproduces the reference values") {
  CHECK(brute_force_psp(table_trial(), table_strategy()) == doctest::Approx(0.572).epsilon(1e-14));
  for (double y : {0.0, 0.3, 1.0}) {
    CHECK(brute_force_psp(validate_trial({{1.0, 0.5}}), Strategy{y}) == doctest::Approx(0.5).epsilon(1e-15));
  }
  CHECK_THROWS_AS(brute_force_psp(table_trial(), Strategy{0.5, 0.5}), Error);
}

TEST_CASE("brute force agrees with the collapsed formula on 1000 random instances") {
  RandomStream stream(314);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto inst = verify::random_instance(stream);
    worst = std::max(worst, std::abs(brute_force_psp(inst.trial, inst.strategy) -
                                     analytic_psp(inst.trial, inst.strategy)));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("table trial estimate lands within three standard errors") {
  const SimResult r = simulate_trial(table_trial(), table_strategy(), options(1'000'000, 20240101));
  CHECK(std::abs(r.empirical_psp - 0.572) < 3.0 * std::sqrt(0.572 * 0.428 / 1e6));
  CHECK(binomial_test_greater(r, 0.56).reject_at.at(0.001));
}

TEST_CASE("always predicting success estimates p") {
  const SimResult r = simulate_trial(table_trial(), Strategy::uniform(3, 1.0), options(1'000'000, 5));
  CHECK(std::abs(r.empirical_psp - 0.56) < 4.0 * std::sqrt(0.56 * 0.44 / 1e6));
  CHECK(r.hits == r.successes);
}

TEST_CASE("a single trial yields zero or one hit") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SimResult r = simulate_trial(table_trial(), table_strategy(), options(1, seed));
    CHECK(r.n == 1);
    CHECK(r.hits <= 1);
    CHECK(r.partitions == 1);
  }
}

TEST_CASE("invalid simulation inputs") {
  CHECK_THROWS_AS(simulate_trial(table_trial(), Strategy{0.5}, options(10, 1)), Error);
  CHECK_THROWS_AS(simulate_trial(table_trial(), table_strategy(), options(0, 1)), Error);
  SimOptions zero_partition = options(10, 1);
  zero_partition.partition_size = 0;
  CHECK_THROWS_AS(simulate_trial(table_trial(), table_strategy(), zero_partition), Error);
}

TEST_CASE("result invariants") {
  const SimResult r = simulate_trial(table_trial(), table_strategy(), options(150'000, 77));
  CHECK(r.hits <= r.n);
  CHECK(r.empirical_psp == static_cast<double>(r.hits) / static_cast<double>(r.n));
  CHECK(r.ci_low <= r.empirical_psp);
  CHECK(r.empirical_psp <= r.ci_high);
  CHECK(r.partitions == partition_count(150'000, kDefaultPartitionSize));
  CHECK(r.partitions == 3);
  REQUIRE(r.cells.size() == 3);
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  for (const auto& c : r.cells) {
    trials += c.trials;
    hits += c.hits;
  }
  CHECK(trials == r.n);
  CHECK(hits == r.hits);
}

TEST_CASE("bit-identical results for any worker count") {
  SimOptions base = options(300'000, 99);
  base.partition_size = 10'000;
  base.execution = Execution::kSerialReference;
  const SimResult reference = simulate_trial(table_trial(), table_strategy(), base);
  for (int workers : {1, 2, 8}) {
    SimOptions opts = base;
    opts.execution = Execution::kParallel;
    opts.workers = workers;
    INFO("workers=" << workers);
    CHECK(simulate_trial(table_trial(), table_strategy(), opts) == reference);
  }
  SimOptions other = base;
  other.partition_size = 20'000;
  CHECK_FALSE(simulate_trial(table_trial(), table_strategy(), other) == reference);
}

TEST_CASE("engine merges partition tallies in order") {
  SimOptions opts = options(1003, 4);
  opts.partition_size = 100;
  const PartitionKernel kernel = [](RandomStream& stream, std::uint64_t count) {
    Tally t;
    for (std::uint64_t i = 0; i < count; ++i) t.record(stream.index() % kMaxCells, stream.bernoulli(0.5), false);
    return t;
  };
  const auto parts = run_partitions_serial(opts, kernel);
  REQUIRE(parts.size() == 11);
  CHECK(parts.back().trials == 3);
  CHECK(run_partitions_parallel(opts, kernel) == parts);
  Tally merged;
  for (const auto& t : parts) merged += t;
  CHECK(run_partitions(opts, kernel) == merged);
  CHECK(merged.trials == 1003);
}

TEST_CASE("99% Wilson interval covers the true value in at least 190 of 200 runs") {
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SimResult r = simulate_trial(table_trial(), table_strategy(), options(10'000, 1000 + seed));
    covered += (r.ci_low <= 0.572 && 0.572 <= r.ci_high) ? 1 : 0;
  }
  CHECK(covered >= 190);
}

TEST_CASE("error below four standard errors in at least 199 of 200 runs at n = 1e6") {
  int within = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const SimResult r = simulate_trial(table_trial(), table_strategy(), options(1'000'000, 5000 + seed));
    within += std::abs(r.empirical_psp - 0.572) < 4.0 * r.std_error ? 1 : 0;
  }
  CHECK(within >= 199);
}
