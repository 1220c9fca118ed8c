#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "ebt/random.hpp"

namespace ebt {

enum class PointerFamily { kNormal, kCauchy, kLogistic, kExponential };

/// Continuous pointer with full support: the CDF is strictly increasing on
/// the whole line (normal, cauchy, logistic) or on the positive half-line
/// (exponential), so every open interval of the support carries mass.
///
/// Spec strings: "normal:mu,sigma", "cauchy:x0,gamma", "logistic:mu,s",
/// "exponential:rate".
class PointerDistribution {
 public:
  static PointerDistribution normal(double mu, double sigma);
  static PointerDistribution cauchy(double x0, double gamma);
  static PointerDistribution logistic(double mu, double s);
  static PointerDistribution exponential(double rate);

  /// Throws Error(kInvalidParameters) on malformed strings or nonpositive scales.
  static PointerDistribution parse(std::string_view spec);
  std::string to_string() const;

  PointerFamily family() const noexcept { return family_; }
  /// Location parameter; unused (zero) for exponential.
  double location() const noexcept { return location_; }
  /// Scale parameter; the rate for exponential.
  double scale() const noexcept { return scale_; }

  double cdf(double x) const;
  /// Inverse CDF on [0, 1]; the endpoints map to the support's limits.
  double quantile(double u) const;
  double sample(RandomStream& stream) const;

  bool operator==(const PointerDistribution&) const = default;

 private:
  PointerDistribution(PointerFamily family, double location, double scale);

  PointerFamily family_;
  double location_;
  double scale_;
};

enum class Side { kBelow, kAbove };

struct HalfLineRegion {
  double threshold;
  Side direction;

  /// Pointer values equal to the threshold count as below.
  bool contains(double value) const {
    return direction == Side::kAbove ? value > threshold : value <= threshold;
  }
};

HalfLineRegion below(double threshold);
HalfLineRegion above(double threshold);

/// F(t) for `below t`, 1 - F(t) for `above t`.
double region_probability(const PointerDistribution& dist, const HalfLineRegion& region);

/// Distribution of the hidden physical parameters (position, mass, time) the
/// coin-bag preparer draws. Either uniform on [lo, hi] ("uniform:lo,hi") or
/// any pointer family.
class ParameterSampler {
 public:
  struct Uniform {
    double lo;
    double hi;
    bool operator==(const Uniform&) const = default;
  };

  static ParameterSampler uniform(double lo, double hi);
  ParameterSampler(PointerDistribution dist) : impl_(dist) {}  // NOLINT(google-explicit-constructor)

  static ParameterSampler parse(std::string_view spec);
  std::string to_string() const;

  double quantile(double u) const;
  double sample(RandomStream& stream) const;

  bool operator==(const ParameterSampler&) const = default;

 private:
  explicit ParameterSampler(Uniform u) : impl_(u) {}
  std::variant<Uniform, PointerDistribution> impl_;
};

}  // namespace ebt
