// One PASS/FAIL line per acceptance criterion; exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "ebt/core.hpp"
#include "ebt/error.hpp"
#include "ebt/montecarlo.hpp"
#include "ebt/scenarios.hpp"
#include "ebt/verify.hpp"

using namespace ebt;

namespace {

constexpr double kExact = 1e-12;
constexpr std::uint64_t kSuiteSeed = 20240607;
constexpr std::uint64_t kInstances = 1000;

struct Verdict {
  bool passed;
  std::string detail;
};

TrialSpec table_trial() { return validate_trial({{0.2, 0.3}, {0.3, 0.5}, {0.5, 0.7}}); }

SimOptions options(std::uint64_t n, std::uint64_t seed) {
  SimOptions opts;
  opts.n = n;
  opts.seed = seed;
  return opts;
}

RailroadScenario railroad_p_q_01() {
  RailroadScenario sc;
  sc.s1_position = std::tan(std::numbers::pi * (0.1 - 0.5));
  sc.s2_position = -sc.s1_position;
  sc.r = 0.75;
  return sc;
}

Verdict table_reproduction() {
  const AnalysisReport r = analyze(table_trial(), Strategy{0.1, 0.9, 0.7});
  const bool ok = std::abs(r.p - 0.56) <= kExact && std::abs(r.psp - 0.572) <= kExact;
  return {ok, fmt::format("p = {:.17g}, psp = {:.17g}", r.p, r.psp)};
}

Verdict two_coins() {
  const TrialSpec t = validate_trial({{0.5, 0.4}, {0.5, 0.7}});
  const double p = success_probability(t);
  const OptimalStrategy best = optimal_strategy(t);
  const double formula = p + 0.5 * (1.0 - 2.0 * 0.4);
  const bool ok = std::abs(p - 0.55) <= kExact && best.strategy == Strategy{0.0, 1.0} &&
                  std::abs(best.psp - 0.65) <= kExact && std::abs(formula - 0.65) <= kExact &&
                  std::abs(premium(t) + p - best.psp) <= kExact;
  return {ok, fmt::format("p = {:.17g}, y* = ({}, {}), max psp = {:.17g}, p + premium = {:.17g}", p, best.strategy[0],
                          best.strategy[1], best.psp, formula)};
}

Verdict suite(const verify::SuiteReport& r) {
  std::string detail = fmt::format("{} checked, {} applicable, {} violations", r.checked, r.applicable, r.violations);
  if (!r.counterexamples.empty()) detail += "; first: " + r.counterexamples.front();
  return {r.passed() && r.checked == kInstances, detail};
}

Verdict oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  Verdict o = suite(verify::oracle_agreement_suite(kSuiteSeed, kInstances));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.passed = o.passed && seconds < 1.0;
  o.detail += fmt::format(", {:.3f} s", seconds);
  return o;
}

Verdict theorem2_and_p_half() {
  const Verdict t2 = suite(verify::theorem2_suite(kSuiteSeed, kInstances));
  const Verdict half = suite(verify::p_half_suite(kSuiteSeed, kInstances));
  return {t2.passed && half.passed, "theorem 2: " + t2.detail + "; p = 1/2: " + half.detail};
}

Verdict monte_carlo_convergence() {
  const TrialSpec t = table_trial();
  const Strategy y{0.1, 0.9, 0.7};
  int within = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const double err = std::abs(simulate_trial(t, y, options(1'000'000, seed)).empirical_psp - 0.572);
    within += err < 0.0015 ? 1 : 0;
    worst = std::max(worst, err);
  }
  return {within >= 99, fmt::format("{}/100 seeds within 0.0015, worst error {:.6f}", within, worst)};
}

Verdict railroad_end_to_end() {
  const SimResult r = simulate_physical(railroad_p_q_01(), options(1'000'000, 11));
  const double err = std::abs(r.empirical_psp - 0.70);

  RandomStream stream(kSuiteSeed);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    RailroadScenario sc;
    sc.pointer = PointerDistribution::cauchy(-2.0 + 4.0 * stream.uniform(), 0.1 + 3.0 * stream.uniform());
    sc.s1_position = -5.0 + 10.0 * stream.uniform();
    sc.s2_position = sc.s1_position + 1e-3 + 5.0 * stream.uniform();
    sc.r = 0.5 + 1e-6 + (0.5 - 2e-6) * stream.uniform();
    const CompiledTrial c = railroad_to_trial(sc);
    worst = std::max(worst, std::abs(analytic_psp(c.trial, c.strategy) - railroad_psp(sc)));
  }
  return {err < 0.00137 && worst <= kExact,
          fmt::format("empirical {:.6f} (error {:.6f}), worst compile mismatch {:.3g}", r.empirical_psp, err, worst)};
}

Verdict indistinguishability() {
  const CoinBagScenario sc;
  const SimResult r = simulate_physical(sc, options(1'000'000, 17));
  const TestVerdict heads = binomial_test_two_sided(r.successes, r.n, 0.5);
  const TestVerdict hits = binomial_test_greater(r, 0.5);
  const bool ok = !heads.reject_at.at(0.01) && hits.reject_at.at(0.001);
  return {ok, fmt::format("heads {:.6f} (two-sided p {:.4f}), hit rate {:.6f} (one-sided p {:.3g})",
                          static_cast<double>(r.successes) / static_cast<double>(r.n), heads.p_value,
                          r.empirical_psp, hits.p_value)};
}

Verdict timing_equivalence() {
  const TimingComparison t = willoughby_timing(WilloughbyScenario{}, 100'000, 8);
  std::uint64_t mismatches = 0;
  for (std::size_t i = 0; i < t.before.size(); ++i) mismatches += t.before[i] != t.after[i] ? 1 : 0;
  const bool ok = t.before.size() == 100'000 && mismatches == 0 && t.hits_before == t.hits_after;
  return {ok, fmt::format("{} mismatches in {} guesses, hits {} vs {}", mismatches, t.before.size(), t.hits_before,
                          t.hits_after)};
}

Verdict reproducibility() {
  SimOptions base = options(1'000'000, 424242);
  base.partition_size = 50'000;
  base.execution = Execution::kSerialReference;
  const Strategy y{0.1, 0.9, 0.7};
  const SimResult abstract_ref = simulate_trial(table_trial(), y, base);
  const SimResult physical_ref = simulate_physical(railroad_p_q_01(), base);
  int identical = 0;
  for (int workers : {1, 2, 8}) {
    SimOptions opts = base;
    opts.execution = Execution::kParallel;
    opts.workers = workers;
    identical += simulate_trial(table_trial(), y, opts) == abstract_ref ? 1 : 0;
    identical += simulate_physical(railroad_p_q_01(), opts) == physical_ref ? 1 : 0;
  }
  return {identical == 6, fmt::format("{}/6 runs bit-identical to the serial reference ({} partitions)", identical,
                                      abstract_ref.partitions)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"table reproduction", table_reproduction},
      {"two-coin numbers", two_coins},
      {"oracle equivalence", oracle_equivalence},
      {"identity suite", [] { return suite(verify::identity_suite(kSuiteSeed, kInstances)); }},
      {"theorem 1 suite", [] { return suite(verify::theorem1_suite(kSuiteSeed, kInstances)); }},
      {"theorem 2 and p = 1/2 suites", theorem2_and_p_half},
      {"monte carlo convergence", monte_carlo_convergence},
      {"railroad end-to-end", railroad_end_to_end},
      {"indistinguishability contrast", indistinguishability},
      {"timing equivalence", timing_equivalence},
      {"reproducibility", reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.passed ? 0 : 1;
    fmt::print("{} {:>2} {:<30} {}\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failures, criteria.size());
  return failures;
}
