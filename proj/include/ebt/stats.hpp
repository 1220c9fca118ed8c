#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "ebt/pointer.hpp"

namespace ebt {

/// Two-sided 99% normal quantile used for every reported interval.
inline constexpr double kZ99 = 2.5758293035489004;

/// Significance levels reported by every hypothesis test.
inline constexpr double kAlphas[] = {0.05, 0.01, 0.001};

/// Largest n for which binomial tests sum exact tail probabilities; above
/// it they switch to the continuity-corrected normal approximation.
inline constexpr std::uint64_t kExactBinomialLimit = 100000;

struct Interval {
  double low;
  double high;
};

/// Wilson score interval for `hits` out of `n` at normal quantile `z`.
/// Always contains hits / n.
Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z = kZ99);

enum class Alternative { kGreater, kTwoSided };

struct TestVerdict {
  double p0 = 0.5;
  Alternative alternative = Alternative::kGreater;
  double p_value = 1.0;
  std::map<double, bool> reject_at;  // alpha -> p_value <= alpha
};

/// H0: rate = p0 against H1: rate > p0. Throws Error(kInvalidNull) unless 0 < p0 < 1.
TestVerdict binomial_test_greater(std::uint64_t hits, std::uint64_t n, double p0);

/// H0: rate = p0 against H1: rate != p0. The exact branch sums every outcome
/// no more likely than the observed one.
TestVerdict binomial_test_two_sided(std::uint64_t hits, std::uint64_t n, double p0);

/// Binomial probability mass at k, computed in log space.
double binomial_pmf(std::uint64_t k, std::uint64_t n, double p);

/// Sup distance between the empirical CDF of `samples` and `dist`'s CDF.
/// Throws Error(kEmptySample) for an empty span.
double ks_distance(std::span<const double> samples, const PointerDistribution& dist);

}  // namespace ebt
