#include "ebt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <fmt/format.h>

#include "ebt/error.hpp"

namespace ebt {

namespace {

void require_null(double p0) {
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw Error(ErrorCode::kInvalidNull, "p0", fmt::format("null rate must lie strictly inside (0, 1), got {}", p0));
  }
}

void require_counts(std::uint64_t hits, std::uint64_t n) {
  if (n == 0 || hits > n) {
    throw Error(ErrorCode::kInvalidParameters, "hits", fmt::format("need 0 <= hits <= n and n >= 1, got {}/{}", hits, n));
  }
}

double upper_normal_tail(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

TestVerdict finish(double p0, Alternative alternative, double p_value) {
  TestVerdict v;
  v.p0 = p0;
  v.alternative = alternative;
  v.p_value = std::clamp(p_value, 0.0, 1.0);
  for (double alpha : kAlphas) {
    v.reject_at[alpha] = v.p_value <= alpha;
  }
  return v;
}

}  // namespace

Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z) {
  require_counts(hits, n);
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  return {std::min(std::max(0.0, center - half), phat), std::max(std::min(1.0, center + half), phat)};
}

double binomial_pmf(std::uint64_t k, std::uint64_t n, double p) {
  if (k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double kk = static_cast<double>(k);
  const double nn = static_cast<double>(n);
  const double log_choose = std::lgamma(nn + 1.0) - std::lgamma(kk + 1.0) - std::lgamma(nn - kk + 1.0);
  return std::exp(log_choose + kk * std::log(p) + (nn - kk) * std::log1p(-p));
}

TestVerdict binomial_test_greater(std::uint64_t hits, std::uint64_t n, double p0) {
  require_null(p0);
  require_counts(hits, n);
  if (hits == 0) {
    return finish(p0, Alternative::kGreater, 1.0);
  }
  if (n <= kExactBinomialLimit) {
    // P(X >= hits), walking the upper tail with the pmf ratio recurrence.
    double term = binomial_pmf(hits, n, p0);
    double tail = term;
    const double odds = p0 / (1.0 - p0);
    for (std::uint64_t k = hits; k < n; ++k) {
      term *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
      tail += term;
      if (term < tail * 1e-17) break;
    }
    return finish(p0, Alternative::kGreater, tail);
  }
  const double nn = static_cast<double>(n);
  const double sigma = std::sqrt(nn * p0 * (1.0 - p0));
  const double z = (static_cast<double>(hits) - 0.5 - nn * p0) / sigma;
  return finish(p0, Alternative::kGreater, upper_normal_tail(z));
}

TestVerdict binomial_test_two_sided(std::uint64_t hits, std::uint64_t n, double p0) {
  require_null(p0);
  require_counts(hits, n);
  if (n <= kExactBinomialLimit) {
    const double observed = binomial_pmf(hits, n, p0);
    const double cutoff = observed * (1.0 + 1e-7);
    double total = 0.0;
    for (std::uint64_t k = 0; k <= n; ++k) {
      const double mass = binomial_pmf(k, n, p0);
      if (mass <= cutoff) total += mass;
    }
    return finish(p0, Alternative::kTwoSided, total);
  }
  const double nn = static_cast<double>(n);
  const double sigma = std::sqrt(nn * p0 * (1.0 - p0));
  const double deviation = std::max(0.0, std::abs(static_cast<double>(hits) - nn * p0) - 0.5);
  return finish(p0, Alternative::kTwoSided, 2.0 * upper_normal_tail(deviation / sigma));
}

double ks_distance(std::span<const double> samples, const PointerDistribution& dist) {
  if (samples.empty()) {
    throw Error(ErrorCode::kEmptySample, "samples", "KS distance needs at least one sample");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = dist.cdf(sorted[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace ebt
