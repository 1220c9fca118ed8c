#include "ebt/scenarios.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "ebt/error.hpp"

namespace ebt {

namespace {

[[noreturn]] void reject(const char* field, const std::string& message) {
  throw Error(ErrorCode::kInvalidScenario, field, message);
}

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) reject(field, fmt::format("must be finite, got {}", v));
}

// Number of midpoints used to average over the coin-bag parameter sampler.
constexpr int kQuadraturePoints = 1 << 16;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(PointerModel model) {
  switch (model) {
    case PointerModel::kPosition: return "position";
    case PointerModel::kMass: return "mass";
    case PointerModel::kTime: return "time";
  }
  return "position";
}

PointerModel parse_pointer_model(std::string_view name) {
  if (name == "position") return PointerModel::kPosition;
  if (name == "mass") return PointerModel::kMass;
  if (name == "time") return PointerModel::kTime;
  throw Error(ErrorCode::kInvalidScenario, "model",
              fmt::format("expected position, mass or time, got '{}'", name));
}

void validate(const EnvelopeScenario& sc) {
  require_finite(sc.small_amount, "small_amount");
  require_finite(sc.large_amount, "large_amount");
  if (!(sc.small_amount > 0.0)) reject("small_amount", fmt::format("must be positive, got {}", sc.small_amount));
  if (!(sc.small_amount < sc.large_amount)) {
    reject("large_amount", fmt::format("must exceed small_amount ({} <= {})", sc.large_amount, sc.small_amount));
  }
}

void validate(const RailroadScenario& sc) {
  require_finite(sc.s1_position, "s1_position");
  require_finite(sc.s2_position, "s2_position");
  if (!(sc.s1_position < sc.s2_position)) {
    reject("s2_position", fmt::format("S1 must lie west of S2 ({} >= {})", sc.s1_position, sc.s2_position));
  }
  if (!(sc.r > 0.5 && sc.r < 1.0)) reject("r", fmt::format("spinner red probability must lie in (0.5, 1), got {}", sc.r));
}

void validate(const WilloughbyScenario& sc) {
  require_finite(sc.west_station, "west_station");
  require_finite(sc.current_station, "current_station");
  require_finite(sc.east_station, "east_station");
  if (!(sc.west_station < sc.current_station)) {
    reject("west_station", fmt::format("must lie west of current_station ({} >= {})", sc.west_station, sc.current_station));
  }
  if (!(sc.current_station < sc.east_station)) {
    reject("east_station", fmt::format("must lie east of current_station ({} <= {})", sc.east_station, sc.current_station));
  }
}

void validate(const CoinBagScenario& sc) {
  if (!(sc.s1 >= 0.0 && sc.s1 < 0.5)) reject("s1", fmt::format("must lie in [0, 0.5), got {}", sc.s1));
  if (!(sc.s2 > 0.5 && sc.s2 <= 1.0)) reject("s2", fmt::format("must lie in (0.5, 1], got {}", sc.s2));
  if (std::abs(sc.s1 + sc.s2 - 1.0) > kTolerance) {
    reject("s2", fmt::format("s1 + s2 must equal 1, got {:.17g}", sc.s1 + sc.s2));
  }
}

void validate(const Scenario& sc) {
  std::visit([](const auto& s) { validate(s); }, sc);
}

double envelope_psp(const EnvelopeScenario& sc) {
  validate(sc);
  const double p = region_probability(sc.pointer, below(sc.small_amount));
  const double q = region_probability(sc.pointer, above(sc.large_amount));
  return 1.0 - 0.5 * (p + q);
}

double railroad_psp(const RailroadScenario& sc) {
  validate(sc);
  const double p = region_probability(sc.pointer, below(sc.s1_position));
  const double q = region_probability(sc.pointer, above(sc.s2_position));
  return sc.r - (sc.r - 0.5) * (p + q);
}

double willoughby_psp(const WilloughbyScenario& sc) {
  validate(sc);
  const double p = region_probability(sc.pointer, below(sc.west_station));
  const double q = region_probability(sc.pointer, above(sc.east_station));
  return 1.0 - 0.5 * (p + q);
}

CompiledTrial envelope_to_trial(const EnvelopeScenario& sc) {
  validate(sc);
  return {validate_trial({{0.5, 0.0}, {0.5, 1.0}}),
          Strategy{region_probability(sc.pointer, below(sc.small_amount)),
                   region_probability(sc.pointer, below(sc.large_amount))}};
}

CompiledTrial railroad_to_trial(const RailroadScenario& sc) {
  validate(sc);
  // The passenger calls "east" when the pointer is east of the train, so
  // E_1 = east of S1 and E_2 = east of S2: y = (1 - p, q).
  return {validate_trial({{0.5, sc.r}, {0.5, 1.0 - sc.r}}),
          Strategy{region_probability(sc.pointer, above(sc.s1_position)),
                   region_probability(sc.pointer, above(sc.s2_position))}};
}

CompiledTrial willoughby_to_trial(const WilloughbyScenario& sc) {
  validate(sc);
  return {validate_trial({{0.5, 1.0}, {0.5, 0.0}}),
          Strategy{region_probability(sc.pointer, above(sc.west_station)),
                   region_probability(sc.pointer, above(sc.east_station))}};
}

CompiledTrial coin_bag_to_trial(const CoinBagScenario& sc, const CoinRealization& realization) {
  validate(sc);
  if (realization.coin1_parameter == realization.coin2_parameter) {
    throw Error(ErrorCode::kDegenerateRealization, "realization",
                fmt::format("both coins received parameter {}", realization.coin1_parameter));
  }
  if (!(realization.coin2_parameter < realization.coin1_parameter)) {
    throw Error(ErrorCode::kInvalidScenario, "realization",
                fmt::format("Coin 2 must receive the smaller parameter ({} >= {})", realization.coin2_parameter,
                            realization.coin1_parameter));
  }
  return {validate_trial({{0.5, sc.s1}, {0.5, sc.s2}}),
          Strategy{region_probability(sc.pointer, above(realization.coin1_parameter)),
                   region_probability(sc.pointer, above(realization.coin2_parameter))}};
}

double coin_bag_psp(const CoinBagScenario& sc, const CoinRealization& realization) {
  const CompiledTrial c = coin_bag_to_trial(sc, realization);
  return 0.5 + (c.strategy[1] - c.strategy[0]) * (sc.s2 - 0.5);
}

CompiledTrial coin_bag_expected_trial(const CoinBagScenario& sc) {
  validate(sc);
  // With G the sampler CDF and F the pointer CDF, the larger of two draws has
  // E[F(max)] = int_0^1 F(G^-1(u)) 2u du and the smaller
  // E[F(min)] = int_0^1 F(G^-1(u)) 2(1 - u) du. Midpoint rule.
  double f_max = 0.0;
  double f_min = 0.0;
  const double h = 1.0 / kQuadraturePoints;
  for (int i = 0; i < kQuadraturePoints; ++i) {
    const double u = (i + 0.5) * h;
    const double f = sc.pointer.cdf(sc.parameter_sampler.quantile(u));
    f_max += f * 2.0 * u;
    f_min += f * 2.0 * (1.0 - u);
  }
  f_max *= h;
  f_min *= h;
  return {validate_trial({{0.5, sc.s1}, {0.5, sc.s2}}),
          Strategy{std::clamp(1.0 - f_max, 0.0, 1.0), std::clamp(1.0 - f_min, 0.0, 1.0)}};
}

double coin_bag_expected_psp(const CoinBagScenario& sc) {
  const CompiledTrial c = coin_bag_expected_trial(sc);
  return analytic_psp(c.trial, c.strategy);
}

CompiledTrial compile(const Scenario& sc) {
  return std::visit(Overloaded{
                        [](const EnvelopeScenario& s) { return envelope_to_trial(s); },
                        [](const RailroadScenario& s) { return railroad_to_trial(s); },
                        [](const WilloughbyScenario& s) { return willoughby_to_trial(s); },
                        [](const CoinBagScenario& s) { return coin_bag_expected_trial(s); },
                    },
                    sc);
}

double scenario_psp(const Scenario& sc) {
  return std::visit(Overloaded{
                        [](const EnvelopeScenario& s) { return envelope_psp(s); },
                        [](const RailroadScenario& s) { return railroad_psp(s); },
                        [](const WilloughbyScenario& s) { return willoughby_psp(s); },
                        [](const CoinBagScenario& s) { return coin_bag_expected_psp(s); },
                    },
                    sc);
}

CoinRealization draw_realization(const CoinBagScenario& sc, RandomStream& stream) {
  const double a = sc.parameter_sampler.sample(stream);
  double b = sc.parameter_sampler.sample(stream);
  while (a == b) {
    b = sc.parameter_sampler.sample(stream);
  }
  return {std::max(a, b), std::min(a, b)};
}

namespace {

PartitionKernel envelope_kernel(const EnvelopeScenario& sc) {
  return [sc](RandomStream& stream, std::uint64_t count) {
    Tally tally;
    for (std::uint64_t t = 0; t < count; ++t) {
      const bool opened_large = stream.bernoulli(0.5);
      const double opened = opened_large ? sc.large_amount : sc.small_amount;
      const double pointer = sc.pointer.sample(stream);
      const bool guess_other = pointer > opened;
      tally.record(opened_large ? 1 : 0, guess_other != opened_large, opened_large);
    }
    return tally;
  };
}

PartitionKernel railroad_kernel(const RailroadScenario& sc) {
  return [sc](RandomStream& stream, std::uint64_t count) {
    Tally tally;
    for (std::uint64_t t = 0; t < count; ++t) {
      const bool at_s2 = stream.bernoulli(0.5);
      const bool red = stream.bernoulli(sc.r);
      // Red returns toward R: east from S1, west from S2.
      const bool goes_east = at_s2 ? !red : red;
      const double position = at_s2 ? sc.s2_position : sc.s1_position;
      const bool predict_east = sc.pointer.sample(stream) > position;
      tally.record((at_s2 ? 2 : 0) + (red ? 0 : 1), predict_east == goes_east, goes_east);
    }
    return tally;
  };
}

PartitionKernel willoughby_kernel(const WilloughbyScenario& sc) {
  return [sc](RandomStream& stream, std::uint64_t count) {
    Tally tally;
    for (std::uint64_t t = 0; t < count; ++t) {
      const bool heading_east = stream.bernoulli(0.5);
      const double stopped_at = heading_east ? sc.west_station : sc.east_station;
      const bool predict_east = sc.pointer.sample(stream) > stopped_at;
      tally.record(heading_east ? 0 : 1, predict_east == heading_east, heading_east);
    }
    return tally;
  };
}

PartitionKernel coin_bag_kernel(const CoinBagScenario& sc) {
  return [sc](RandomStream& stream, std::uint64_t count) {
    Tally tally;
    for (std::uint64_t t = 0; t < count; ++t) {
      const CoinRealization prep = draw_realization(sc, stream);
      const bool coin2 = stream.bernoulli(0.5);
      const double parameter = coin2 ? prep.coin2_parameter : prep.coin1_parameter;
      // position: pointer right of the coin; mass: heavier; time: after the
      // lock time. Every model reads "pointer > parameter".
      const bool predict_heads = sc.pointer.sample(stream) > parameter;
      const bool heads = stream.bernoulli(coin2 ? sc.s2 : sc.s1);
      tally.record(coin2 ? 1 : 0, predict_heads == heads, heads);
    }
    return tally;
  };
}

}  // namespace

SimResult simulate_physical(const Scenario& sc, const SimOptions& opts) {
  validate(sc);
  validate_options(opts);
  const auto [kernel, cells] = std::visit(
      Overloaded{
          [](const EnvelopeScenario& s) { return std::pair{envelope_kernel(s), std::size_t{2}}; },
          [](const RailroadScenario& s) { return std::pair{railroad_kernel(s), std::size_t{4}}; },
          [](const WilloughbyScenario& s) { return std::pair{willoughby_kernel(s), std::size_t{2}}; },
          [](const CoinBagScenario& s) { return std::pair{coin_bag_kernel(s), std::size_t{2}}; },
      },
      sc);
  return summarize(run_partitions(opts, kernel), opts, cells);
}

TimingComparison willoughby_timing(const WilloughbyScenario& sc, std::uint64_t n, std::uint64_t seed) {
  validate(sc);
  TimingComparison out;
  out.before.reserve(n);
  out.after.reserve(n);

  // Predict-before: the pointer is consulted first, the direction is revealed afterwards.
  {
    RandomStream pointer_stream(seed, 0);
    RandomStream coin_stream(seed, 1);
    for (std::uint64_t t = 0; t < n; ++t) {
      const double pointer = sc.pointer.sample(pointer_stream);
      const bool heading_east = coin_stream.bernoulli(0.5);
      const double stopped_at = heading_east ? sc.west_station : sc.east_station;
      const bool guess_east = pointer > stopped_at;
      out.before.push_back(guess_east);
      out.hits_before += guess_east == heading_east;
    }
  }
  // Infer-after: the coin has already been flipped when the pointer is read.
  {
    RandomStream pointer_stream(seed, 0);
    RandomStream coin_stream(seed, 1);
    for (std::uint64_t t = 0; t < n; ++t) {
      const bool heading_east = coin_stream.bernoulli(0.5);
      const double stopped_at = heading_east ? sc.west_station : sc.east_station;
      const double pointer = sc.pointer.sample(pointer_stream);
      const bool guess_east = pointer > stopped_at;
      out.after.push_back(guess_east);
      out.hits_after += guess_east == heading_east;
    }
  }
  return out;
}

}  // namespace ebt
