#pragma once

// Closed-form algebra of extended (two-stage) Bernoulli trials.
//
// A trial first selects outcome k with probability weight_k, then succeeds
// with probability success_prob_k. A pointer strategy predicts success on
// outcome k with probability y_k, independently of everything else. Sets
// E_k of the pointer space are represented only through y_k = P(E_k); the
// geometric realization lives in scenarios.hpp.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ebt {

/// Floating-point slack used by the theorem predicates and normalization.
inline constexpr double kTolerance = 1e-12;

struct Outcome {
  double weight = 0.0;
  double success_prob = 0.0;

  bool operator==(const Outcome&) const = default;
};

class TrialSpec;

/// Checks weights (nonnegative, summing to 1 within kTolerance) and success
/// probabilities (in [0, 1]). Inputs are never renormalized.
TrialSpec validate_trial(std::vector<Outcome> raw);
TrialSpec validate_trial(std::initializer_list<Outcome> raw);

class TrialSpec {
 public:
  std::span<const Outcome> outcomes() const noexcept { return outcomes_; }
  std::size_t size() const noexcept { return outcomes_.size(); }
  const Outcome& operator[](std::size_t k) const { return outcomes_[k]; }

  bool operator==(const TrialSpec&) const = default;

 private:
  friend TrialSpec validate_trial(std::vector<Outcome> raw);
  explicit TrialSpec(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {}

  std::vector<Outcome> outcomes_;
};

/// Per-outcome probabilities y_k of predicting success.
class Strategy {
 public:
  explicit Strategy(std::vector<double> y);
  Strategy(std::initializer_list<double> y) : Strategy(std::vector<double>(y)) {}

  /// Same y for every one of `n` outcomes.
  static Strategy uniform(std::size_t n, double y);

  std::span<const double> y() const noexcept { return y_; }
  std::size_t size() const noexcept { return y_.size(); }
  double operator[](std::size_t k) const { return y_[k]; }

  bool operator==(const Strategy&) const = default;

 private:
  std::vector<double> y_;
};

struct AnalysisReport {
  double p = 0.0;
  double psp = 0.0;
  double edge = 0.0;
  bool beats_chance = false;
  double premium_bound = 0.0;
};

struct OptimalStrategy {
  Strategy strategy;
  double psp;
};

struct Theorem1Verdict {
  bool applicable = false;
  bool holds = true;
};

struct Theorem2Verdict {
  bool hypotheses_met = false;
  bool conclusion_holds = true;
};

struct SufficiencyVerdict {
  bool antecedent = false;  // y_1 < y_2
  bool holds = true;        // antecedent implies PSP > p
};

/// p = sum_k weight_k * success_prob_k.
double success_probability(const TrialSpec& trial);

/// PSP through the collapsed form sum_k w_k (1 + 2 s_k y_k - s_k - y_k).
double analytic_psp(const TrialSpec& trial, const Strategy& strat);

/// PSP through the two-sum form sum_k w_k s_k y_k + sum_k w_k (1 - s_k)(1 - y_k).
double psp_two_sum(const TrialSpec& trial, const Strategy& strat);

/// E = sum_k w_k (2 s_k + y_k - 2 s_k y_k). PSP > p exactly when E < 1.
double edge_condition(const TrialSpec& trial, const Strategy& strat);

/// Largest attainable PSP minus p: sum over s_k < 1/2 of w_k (1 - 2 s_k).
double premium(const TrialSpec& trial);

/// y_k = 0 when s_k < 1/2 and y_k = 1 otherwise (ties predict success).
OptimalStrategy optimal_strategy(const TrialSpec& trial);

AnalysisReport analyze(const TrialSpec& trial, const Strategy& strat);

// Theorem predicates. All of them carry the standing assumption p >= 1/2
// (success is the more likely outcome); below it the statements do not apply.

/// If N = 1 or all y_k are equal (and p >= 1/2), then PSP <= p.
Theorem1Verdict check_theorem1(const TrialSpec& trial, const Strategy& strat);

/// For N = 2: s_1 < 1/2 < s_2, p >= 1/2 and PSP > p imply y_2 > y_1.
/// Throws kWrongArity when N != 2.
Theorem2Verdict check_theorem2(const TrialSpec& trial, const Strategy& strat);

/// For N = 2 with s_1 < 1/2 < s_2 and p = 1/2: y_1 < y_2 implies PSP > p.
/// Throws kWrongArity or kPreconditionViolated.
SufficiencyVerdict check_p_half_sufficiency(const TrialSpec& trial, const Strategy& strat);

}  // namespace ebt
