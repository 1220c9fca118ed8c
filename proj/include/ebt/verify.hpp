#pragma once

// Randomized checks of the closed-form results, shared by the test suite
// and `ebt verify-theorems`.
//
// Instances: weights are uniform draws normalized to sum 1, success
// probabilities and y_k are uniform on [0, 1] unless a suite needs them
// conditioned (s_1 < 1/2 < s_2, p >= 1/2, p = 1/2).

#include <cstdint>
#include <string>
#include <vector>

#include "ebt/core.hpp"
#include "ebt/random.hpp"

namespace ebt::verify {

inline constexpr std::size_t kMaxOutcomes = 8;
inline constexpr double kOracleTolerance = 1e-14;

struct Instance {
  TrialSpec trial;
  Strategy strategy;
};

TrialSpec random_trial(RandomStream& stream, std::size_t n);
Strategy random_strategy(RandomStream& stream, std::size_t n);

/// N uniform on 1..kMaxOutcomes.
Instance random_instance(RandomStream& stream);
/// p >= 1/2 and either N = 1 or a uniform strategy.
Instance theorem1_instance(RandomStream& stream);
/// N = 2, s_1 < 1/2 < s_2, p >= 1/2.
Instance theorem2_instance(RandomStream& stream);
/// N = 2, s_1 < 1/2 < s_2, weights chosen so that p = 1/2.
Instance p_half_instance(RandomStream& stream);

/// Instance as a one-line JSON object with round-trip precision.
std::string describe(const Instance& instance);

struct SuiteReport {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t applicable = 0;  // instances where the statement has content
  std::uint64_t violations = 0;
  std::vector<std::string> counterexamples;  // first few, verbatim

  bool passed() const { return violations == 0; }
};

SuiteReport oracle_agreement_suite(std::uint64_t seed, std::uint64_t count);
SuiteReport identity_suite(std::uint64_t seed, std::uint64_t count);
SuiteReport theorem1_suite(std::uint64_t seed, std::uint64_t count);
SuiteReport theorem2_suite(std::uint64_t seed, std::uint64_t count);
SuiteReport p_half_suite(std::uint64_t seed, std::uint64_t count);

/// All of the above, in that order.
std::vector<SuiteReport> run_theorem_suites(std::uint64_t seed, std::uint64_t count);

}  // namespace ebt::verify
