#include "ebt/verify.hpp"

#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "ebt/montecarlo.hpp"

namespace ebt::verify {

namespace {

constexpr std::size_t kMaxCounterexamples = 5;

// Substream indices; the oracle and identity suites deliberately share one.
constexpr std::uint64_t kGeneralStream = 0;
constexpr std::uint64_t kTheorem1Stream = 1;
constexpr std::uint64_t kTheorem2Stream = 2;
constexpr std::uint64_t kPHalfStream = 3;

std::size_t random_size(RandomStream& stream) { return 1 + static_cast<std::size_t>(stream() % kMaxOutcomes); }

void record_violation(SuiteReport& report, const Instance& instance, const std::string& detail) {
  ++report.violations;
  if (report.counterexamples.size() < kMaxCounterexamples) {
    report.counterexamples.push_back(describe(instance) + " " + detail);
  }
}

}  // namespace

TrialSpec random_trial(RandomStream& stream, std::size_t n) {
  std::vector<Outcome> outcomes(n);
  double total = 0.0;
  for (auto& o : outcomes) {
    o.weight = stream.uniform_open();
    total += o.weight;
  }
  for (auto& o : outcomes) {
    o.weight /= total;
    o.success_prob = stream.uniform();
  }
  return validate_trial(std::move(outcomes));
}

Strategy random_strategy(RandomStream& stream, std::size_t n) {
  std::vector<double> y(n);
  for (auto& v : y) v = stream.uniform();
  return Strategy(std::move(y));
}

Instance random_instance(RandomStream& stream) {
  const std::size_t n = random_size(stream);
  TrialSpec trial = random_trial(stream, n);
  return {std::move(trial), random_strategy(stream, n)};
}

Instance theorem1_instance(RandomStream& stream) {
  while (true) {
    const std::size_t n = random_size(stream);
    TrialSpec trial = random_trial(stream, n);
    if (success_probability(trial) < 0.5) continue;
    Strategy strat = n == 1 ? random_strategy(stream, 1) : Strategy::uniform(n, stream.uniform());
    return {std::move(trial), std::move(strat)};
  }
}

Instance theorem2_instance(RandomStream& stream) {
  while (true) {
    const double w1 = stream.uniform_open();
    const double s1 = 0.5 * stream.uniform_open();
    const double s2 = 0.5 + 0.5 * stream.uniform_open();
    TrialSpec trial = validate_trial({{w1, s1}, {1.0 - w1, s2}});
    if (success_probability(trial) < 0.5) continue;
    return {std::move(trial), random_strategy(stream, 2)};
  }
}

Instance p_half_instance(RandomStream& stream) {
  const double s1 = 0.5 * stream.uniform_open();
  const double s2 = 0.5 + 0.5 * stream.uniform_open();
  // w1 s1 + (1 - w1) s2 = 1/2
  const double w1 = (s2 - 0.5) / (s2 - s1);
  TrialSpec trial = validate_trial({{w1, s1}, {1.0 - w1, s2}});
  return {std::move(trial), random_strategy(stream, 2)};
}

std::string describe(const Instance& instance) {
  std::vector<std::string> outcomes;
  for (const auto& o : instance.trial.outcomes()) {
    outcomes.push_back(fmt::format("{{\"weight\":{:.17g},\"success_prob\":{:.17g}}}", o.weight, o.success_prob));
  }
  std::vector<std::string> y;
  for (double v : instance.strategy.y()) y.push_back(fmt::format("{:.17g}", v));
  return fmt::format("{{\"outcomes\":[{}],\"y\":[{}]}}", fmt::join(outcomes, ","), fmt::join(y, ","));
}

SuiteReport oracle_agreement_suite(std::uint64_t seed, std::uint64_t count) {
  SuiteReport report;
  report.name = "oracle_agreement";
  RandomStream stream(seed, kGeneralStream);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Instance inst = random_instance(stream);
    ++report.checked;
    ++report.applicable;
    const double exact = analytic_psp(inst.trial, inst.strategy);
    const double enumerated = brute_force_psp(inst.trial, inst.strategy);
    if (std::abs(exact - enumerated) > kOracleTolerance) {
      record_violation(report, inst, fmt::format("analytic={:.17g} enumerated={:.17g}", exact, enumerated));
    }
  }
  return report;
}

SuiteReport identity_suite(std::uint64_t seed, std::uint64_t count) {
  SuiteReport report;
  report.name = "psp_edge_identity";
  RandomStream stream(seed, kGeneralStream);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Instance inst = random_instance(stream);
    ++report.checked;
    ++report.applicable;
    const double psp = analytic_psp(inst.trial, inst.strategy);
    const double edge = edge_condition(inst.trial, inst.strategy);
    const double p = success_probability(inst.trial);
    if (std::abs(psp + edge - (1.0 + p)) > kTolerance) {
      record_violation(report, inst, fmt::format("psp+edge={:.17g} 1+p={:.17g}", psp + edge, 1.0 + p));
    }
  }
  return report;
}

SuiteReport theorem1_suite(std::uint64_t seed, std::uint64_t count) {
  SuiteReport report;
  report.name = "theorem1";
  RandomStream stream(seed, kTheorem1Stream);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Instance inst = theorem1_instance(stream);
    ++report.checked;
    const Theorem1Verdict v = check_theorem1(inst.trial, inst.strategy);
    if (!v.applicable) continue;
    ++report.applicable;
    if (!v.holds) {
      record_violation(report, inst,
                       fmt::format("psp={:.17g} > p={:.17g}", analytic_psp(inst.trial, inst.strategy),
                                   success_probability(inst.trial)));
    }
  }
  return report;
}

SuiteReport theorem2_suite(std::uint64_t seed, std::uint64_t count) {
  SuiteReport report;
  report.name = "theorem2";
  RandomStream stream(seed, kTheorem2Stream);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Instance inst = theorem2_instance(stream);
    ++report.checked;
    const Theorem2Verdict v = check_theorem2(inst.trial, inst.strategy);
    if (!v.hypotheses_met) continue;
    ++report.applicable;
    if (!v.conclusion_holds) record_violation(report, inst, "psp > p but y_2 <= y_1");
  }
  return report;
}

SuiteReport p_half_suite(std::uint64_t seed, std::uint64_t count) {
  SuiteReport report;
  report.name = "p_half_sufficiency";
  RandomStream stream(seed, kPHalfStream);
  for (std::uint64_t i = 0; i < count; ++i) {
    const Instance inst = p_half_instance(stream);
    ++report.checked;
    const SufficiencyVerdict v = check_p_half_sufficiency(inst.trial, inst.strategy);
    if (!v.antecedent) continue;
    ++report.applicable;
    if (!v.holds) {
      record_violation(report, inst,
                       fmt::format("y_1 < y_2 but psp={:.17g} <= p={:.17g}", analytic_psp(inst.trial, inst.strategy),
                                   success_probability(inst.trial)));
    }
  }
  return report;
}

std::vector<SuiteReport> run_theorem_suites(std::uint64_t seed, std::uint64_t count) {
  return {oracle_agreement_suite(seed, count), identity_suite(seed, count), theorem1_suite(seed, count),
          theorem2_suite(seed, count), p_half_suite(seed, count)};
}

}  // namespace ebt::verify
