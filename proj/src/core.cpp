#include "ebt/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "ebt/error.hpp"

namespace ebt {

namespace {

void require_same_length(const TrialSpec& trial, const Strategy& strat) {
  if (trial.size() != strat.size()) {
    throw Error(ErrorCode::kLengthMismatch, "y",
                fmt::format("strategy has {} entries, trial has {} outcomes", strat.size(), trial.size()));
  }
}

void require_pair(const TrialSpec& trial) {
  if (trial.size() != 2) {
    throw Error(ErrorCode::kWrongArity, "outcomes",
                fmt::format("statement concerns N = 2 trials, got N = {}", trial.size()));
  }
}

bool all_equal(std::span<const double> y) {
  return std::all_of(y.begin(), y.end(), [&](double v) { return std::abs(v - y.front()) <= kTolerance; });
}

}  // namespace

TrialSpec validate_trial(std::vector<Outcome> raw) {
  if (raw.empty()) {
    throw Error(ErrorCode::kEmptyOutcomeList, "outcomes", "at least one outcome is required");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const auto& o = raw[k];
    if (!std::isfinite(o.weight) || o.weight < 0.0) {
      throw Error(ErrorCode::kNegativeWeight, fmt::format("outcomes[{}].weight", k),
                  fmt::format("weight must be a nonnegative number, got {}", o.weight));
    }
    if (!std::isfinite(o.success_prob) || o.success_prob < 0.0 || o.success_prob > 1.0) {
      throw Error(ErrorCode::kSuccessProbOutOfRange, fmt::format("outcomes[{}].success_prob", k),
                  fmt::format("success probability must lie in [0, 1], got {}", o.success_prob));
    }
    total += o.weight;
  }
  if (std::abs(total - 1.0) > kTolerance) {
    throw Error(ErrorCode::kWeightsNotNormalized, "outcomes[].weight",
                fmt::format("weights sum to {:.17g}, expected 1", total));
  }
  return TrialSpec(std::move(raw));
}

TrialSpec validate_trial(std::initializer_list<Outcome> raw) {
  return validate_trial(std::vector<Outcome>(raw));
}

Strategy::Strategy(std::vector<double> y) : y_(std::move(y)) {
  for (std::size_t k = 0; k < y_.size(); ++k) {
    if (!(y_[k] >= 0.0 && y_[k] <= 1.0)) {
      throw Error(ErrorCode::kProbabilityOutOfRange, fmt::format("y[{}]", k),
                  fmt::format("prediction probability must lie in [0, 1], got {}", y_[k]));
    }
  }
}

Strategy Strategy::uniform(std::size_t n, double y) { return Strategy(std::vector<double>(n, y)); }

double success_probability(const TrialSpec& trial) {
  double p = 0.0;
  for (const auto& o : trial.outcomes()) {
    p += o.weight * o.success_prob;
  }
  return std::clamp(p, 0.0, 1.0);
}

double analytic_psp(const TrialSpec& trial, const Strategy& strat) {
  require_same_length(trial, strat);
  double psp = 0.0;
  for (std::size_t k = 0; k < trial.size(); ++k) {
    const double s = trial[k].success_prob;
    const double y = strat[k];
    psp += trial[k].weight * (1.0 + 2.0 * s * y - s - y);
  }
  return std::clamp(psp, 0.0, 1.0);
}

double psp_two_sum(const TrialSpec& trial, const Strategy& strat) {
  require_same_length(trial, strat);
  double predicted_success = 0.0;
  double predicted_failure = 0.0;
  for (std::size_t k = 0; k < trial.size(); ++k) {
    const double w = trial[k].weight;
    const double s = trial[k].success_prob;
    predicted_success += w * s * strat[k];
    predicted_failure += w * (1.0 - s) * (1.0 - strat[k]);
  }
  return std::clamp(predicted_success + predicted_failure, 0.0, 1.0);
}

double edge_condition(const TrialSpec& trial, const Strategy& strat) {
  require_same_length(trial, strat);
  double edge = 0.0;
  for (std::size_t k = 0; k < trial.size(); ++k) {
    const double s = trial[k].success_prob;
    const double y = strat[k];
    edge += trial[k].weight * (2.0 * s + y - 2.0 * s * y);
  }
  return edge;
}

double premium(const TrialSpec& trial) {
  double total = 0.0;
  for (const auto& o : trial.outcomes()) {
    if (o.success_prob < 0.5) {
      total += o.weight * (1.0 - 2.0 * o.success_prob);
    }
  }
  return total;
}

OptimalStrategy optimal_strategy(const TrialSpec& trial) {
  std::vector<double> y(trial.size());
  for (std::size_t k = 0; k < trial.size(); ++k) {
    y[k] = trial[k].success_prob < 0.5 ? 0.0 : 1.0;
  }
  return {Strategy(std::move(y)), std::min(1.0, success_probability(trial) + premium(trial))};
}

AnalysisReport analyze(const TrialSpec& trial, const Strategy& strat) {
  AnalysisReport report;
  report.p = success_probability(trial);
  report.psp = analytic_psp(trial, strat);
  report.edge = edge_condition(trial, strat);
  report.beats_chance = report.psp > report.p;
  report.premium_bound = std::max(0.0, optimal_strategy(trial).psp - report.p);
  return report;
}

Theorem1Verdict check_theorem1(const TrialSpec& trial, const Strategy& strat) {
  require_same_length(trial, strat);
  const double p = success_probability(trial);
  Theorem1Verdict verdict;
  verdict.applicable = (trial.size() == 1 || all_equal(strat.y())) && p >= 0.5 - kTolerance;
  verdict.holds = analytic_psp(trial, strat) <= p + kTolerance;
  return verdict;
}

Theorem2Verdict check_theorem2(const TrialSpec& trial, const Strategy& strat) {
  require_pair(trial);
  require_same_length(trial, strat);
  const double p = success_probability(trial);
  const double psp = analytic_psp(trial, strat);
  Theorem2Verdict verdict;
  // The slack sits on the PSP > p side so that rounding noise at y_1 = y_2
  // cannot manufacture a spurious hypothesis.
  verdict.hypotheses_met = trial[0].success_prob < 0.5 && 0.5 < trial[1].success_prob &&
                           p >= 0.5 - kTolerance && psp > p + kTolerance;
  verdict.conclusion_holds = strat[1] > strat[0];
  return verdict;
}

SufficiencyVerdict check_p_half_sufficiency(const TrialSpec& trial, const Strategy& strat) {
  require_pair(trial);
  require_same_length(trial, strat);
  const double s1 = trial[0].success_prob;
  const double s2 = trial[1].success_prob;
  const double p = success_probability(trial);
  if (!(s1 < 0.5 && 0.5 < s2)) {
    throw Error(ErrorCode::kPreconditionViolated, "outcomes[].success_prob",
                fmt::format("requires s_1 < 0.5 < s_2, got s_1 = {}, s_2 = {}", s1, s2));
  }
  if (std::abs(p - 0.5) > kTolerance) {
    throw Error(ErrorCode::kPreconditionViolated, "outcomes",
                fmt::format("requires p = 0.5, got p = {:.17g}", p));
  }
  SufficiencyVerdict verdict;
  verdict.antecedent = strat[0] < strat[1];
  verdict.holds = !verdict.antecedent || analytic_psp(trial, strat) > p;
  return verdict;
}

}  // namespace ebt
