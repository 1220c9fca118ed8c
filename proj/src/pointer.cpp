#include "ebt/pointer.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/erf.hpp>
#include <fmt/format.h>

#include "ebt/error.hpp"

namespace ebt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite(double v, std::string_view what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::kInvalidParameters, std::string(what), fmt::format("must be finite, got {}", v));
  }
}

void require_positive(double v, std::string_view what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw Error(ErrorCode::kInvalidParameters, std::string(what), fmt::format("must be positive, got {}", v));
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct ParsedSpec {
  std::string_view name;
  std::vector<double> args;
};

ParsedSpec split_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidParameters, std::string(spec),
                "distribution spec must look like family:arg[,arg]");
  }
  ParsedSpec parsed{trim(spec.substr(0, colon)), {}};
  std::string_view rest = spec.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view token = trim(rest.substr(0, comma));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw Error(ErrorCode::kInvalidParameters, std::string(spec),
                  fmt::format("cannot parse '{}' as a number", token));
    }
    parsed.args.push_back(value);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return parsed;
}

void require_arity(const ParsedSpec& parsed, std::size_t n, std::string_view spec) {
  if (parsed.args.size() != n) {
    throw Error(ErrorCode::kInvalidParameters, std::string(spec),
                fmt::format("'{}' takes {} parameter(s), got {}", parsed.name, n, parsed.args.size()));
  }
}

}  // namespace

PointerDistribution::PointerDistribution(PointerFamily family, double location, double scale)
    : family_(family), location_(location), scale_(scale) {}

PointerDistribution PointerDistribution::normal(double mu, double sigma) {
  require_finite(mu, "normal.mu");
  require_positive(sigma, "normal.sigma");
  return {PointerFamily::kNormal, mu, sigma};
}

PointerDistribution PointerDistribution::cauchy(double x0, double gamma) {
  require_finite(x0, "cauchy.x0");
  require_positive(gamma, "cauchy.gamma");
  return {PointerFamily::kCauchy, x0, gamma};
}

PointerDistribution PointerDistribution::logistic(double mu, double s) {
  require_finite(mu, "logistic.mu");
  require_positive(s, "logistic.s");
  return {PointerFamily::kLogistic, mu, s};
}

PointerDistribution PointerDistribution::exponential(double rate) {
  require_positive(rate, "exponential.rate");
  return {PointerFamily::kExponential, 0.0, rate};
}

PointerDistribution PointerDistribution::parse(std::string_view spec) {
  const ParsedSpec parsed = split_spec(spec);
  if (parsed.name == "normal") {
    require_arity(parsed, 2, spec);
    return normal(parsed.args[0], parsed.args[1]);
  }
  if (parsed.name == "cauchy") {
    require_arity(parsed, 2, spec);
    return cauchy(parsed.args[0], parsed.args[1]);
  }
  if (parsed.name == "logistic") {
    require_arity(parsed, 2, spec);
    return logistic(parsed.args[0], parsed.args[1]);
  }
  if (parsed.name == "exponential") {
    require_arity(parsed, 1, spec);
    return exponential(parsed.args[0]);
  }
  throw Error(ErrorCode::kInvalidParameters, std::string(spec),
              fmt::format("unknown pointer family '{}'", parsed.name));
}

std::string PointerDistribution::to_string() const {
  switch (family_) {
    case PointerFamily::kNormal: return fmt::format("normal:{},{}", location_, scale_);
    case PointerFamily::kCauchy: return fmt::format("cauchy:{},{}", location_, scale_);
    case PointerFamily::kLogistic: return fmt::format("logistic:{},{}", location_, scale_);
    case PointerFamily::kExponential: return fmt::format("exponential:{}", scale_);
  }
  return {};
}

double PointerDistribution::cdf(double x) const {
  switch (family_) {
    case PointerFamily::kNormal:
      return 0.5 * std::erfc(-(x - location_) / (scale_ * std::numbers::sqrt2));
    case PointerFamily::kCauchy:
      return 0.5 + std::atan((x - location_) / scale_) / std::numbers::pi;
    case PointerFamily::kLogistic:
      return 1.0 / (1.0 + std::exp(-(x - location_) / scale_));
    case PointerFamily::kExponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-scale_ * x);
  }
  return 0.0;
}

double PointerDistribution::quantile(double u) const {
  if (u <= 0.0) return family_ == PointerFamily::kExponential ? 0.0 : -kInf;
  if (u >= 1.0) return kInf;
  switch (family_) {
    case PointerFamily::kNormal:
      return location_ - scale_ * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
    case PointerFamily::kCauchy:
      return location_ + scale_ * std::tan(std::numbers::pi * (u - 0.5));
    case PointerFamily::kLogistic:
      return location_ + scale_ * std::log(u / (1.0 - u));
    case PointerFamily::kExponential:
      return -std::log1p(-u) / scale_;
  }
  return 0.0;
}

double PointerDistribution::sample(RandomStream& stream) const {
  switch (family_) {
    case PointerFamily::kNormal: {
      // Box-Muller, cosine branch only, so each draw consumes exactly two variates.
      const double radius = std::sqrt(-2.0 * std::log(stream.uniform_open()));
      const double angle = 2.0 * std::numbers::pi * stream.uniform();
      return location_ + scale_ * radius * std::cos(angle);
    }
    case PointerFamily::kCauchy:
      return location_ + scale_ * std::tan(std::numbers::pi * (stream.uniform_open() - 0.5));
    case PointerFamily::kLogistic: {
      const double u = stream.uniform_open();
      return location_ + scale_ * std::log(u / (1.0 - u));
    }
    case PointerFamily::kExponential:
      return -std::log(stream.uniform_open()) / scale_;
  }
  return 0.0;
}

HalfLineRegion below(double threshold) {
  require_finite(threshold, "threshold");
  return {threshold, Side::kBelow};
}

HalfLineRegion above(double threshold) {
  require_finite(threshold, "threshold");
  return {threshold, Side::kAbove};
}

double region_probability(const PointerDistribution& dist, const HalfLineRegion& region) {
  const double f = dist.cdf(region.threshold);
  return region.direction == Side::kBelow ? f : 1.0 - f;
}

ParameterSampler ParameterSampler::uniform(double lo, double hi) {
  require_finite(lo, "uniform.lo");
  require_finite(hi, "uniform.hi");
  if (!(lo < hi)) {
    throw Error(ErrorCode::kInvalidParameters, "uniform", fmt::format("requires lo < hi, got {} and {}", lo, hi));
  }
  return ParameterSampler(Uniform{lo, hi});
}

ParameterSampler ParameterSampler::parse(std::string_view spec) {
  const ParsedSpec parsed = split_spec(spec);
  if (parsed.name == "uniform") {
    require_arity(parsed, 2, spec);
    return uniform(parsed.args[0], parsed.args[1]);
  }
  return ParameterSampler(PointerDistribution::parse(spec));
}

std::string ParameterSampler::to_string() const {
  if (const auto* u = std::get_if<Uniform>(&impl_)) {
    return fmt::format("uniform:{},{}", u->lo, u->hi);
  }
  return std::get<PointerDistribution>(impl_).to_string();
}

double ParameterSampler::quantile(double u) const {
  if (const auto* range = std::get_if<Uniform>(&impl_)) {
    return range->lo + u * (range->hi - range->lo);
  }
  return std::get<PointerDistribution>(impl_).quantile(u);
}

double ParameterSampler::sample(RandomStream& stream) const {
  if (const auto* range = std::get_if<Uniform>(&impl_)) {
    return range->lo + stream.uniform() * (range->hi - range->lo);
  }
  return std::get<PointerDistribution>(impl_).sample(stream);
}

}  // namespace ebt
