#pragma once

// The five concrete pointer experiments.
//
// Each scenario can be compiled to an abstract (TrialSpec, Strategy) pair
// for closed-form analysis, and simulated physically: preparation, pointer
// draw, comparison, outcome, one event at a time. The two paths are
// independent, so their agreement is a check on both.
//
// The balance-scale variant of the envelope game is the envelope scenario
// with the comparison done by the scale; it needs no separate type.

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "ebt/core.hpp"
#include "ebt/montecarlo.hpp"
#include "ebt/pointer.hpp"

namespace ebt {

/// Two envelopes holding S < L. One is picked by a fair coin and opened; if
/// the pointer exceeds its amount, guess that the other one is larger.
struct EnvelopeScenario {
  double small_amount = 1.0;
  double large_amount = 2.0;
  PointerDistribution pointer = PointerDistribution::exponential(1.0);

  bool operator==(const EnvelopeScenario&) const = default;
};

/// The train sits at S1 or S2 with equal probability. A spinner (red with
/// probability r) sends it back toward the origin on red and away on blue.
/// The passenger predicts east when the pointer lies east of the train.
struct RailroadScenario {
  double s1_position = -1.0;
  double s2_position = 1.0;
  double r = 0.75;
  PointerDistribution pointer = PointerDistribution::cauchy(0.0, 1.0);

  bool operator==(const RailroadScenario&) const = default;
};

/// A fair coin fixed the direction of travel. The announced next stop is
/// `current_station`; the passenger does not know which side of it the train
/// is on. Heading east, the train is stopped at `west_station`; heading west,
/// at `east_station`. The passenger predicts east when the pointer lies east
/// of the stopped train.
struct WilloughbyScenario {
  double west_station = -1.0;
  double current_station = 0.0;
  double east_station = 1.0;
  PointerDistribution pointer = PointerDistribution::cauchy(0.0, 1.0);

  bool operator==(const WilloughbyScenario&) const = default;
};

enum class PointerModel { kPosition, kMass, kTime };

std::string_view to_string(PointerModel model);
/// Throws Error(kInvalidScenario) for unknown names.
PointerModel parse_pointer_model(std::string_view name);

/// Coin 1 (heads probability s1 < 1/2) and Coin 2 (s2 = 1 - s1) receive two
/// hidden parameters drawn from `parameter_sampler`; Coin 2 always gets the
/// smaller one (left of, lighter than, or earlier than Coin 1). A fair coin
/// picks which coin is flipped; heads is predicted when the pointer exceeds
/// that coin's parameter.
struct CoinBagScenario {
  double s1 = 1.0 / 3.0;
  double s2 = 2.0 / 3.0;
  PointerModel model = PointerModel::kPosition;
  ParameterSampler parameter_sampler = ParameterSampler::uniform(0.0, 1.0);
  PointerDistribution pointer = PointerDistribution::cauchy(0.0, 1.0);

  bool operator==(const CoinBagScenario&) const = default;
};

/// Hidden parameters of one coin-bag preparation.
struct CoinRealization {
  double coin1_parameter;
  double coin2_parameter;
};

/// One preparation: two sampler draws (redrawn on a tie), the smaller to Coin 2.
CoinRealization draw_realization(const CoinBagScenario& sc, RandomStream& stream);

using Scenario = std::variant<EnvelopeScenario, RailroadScenario, WilloughbyScenario, CoinBagScenario>;

struct CompiledTrial {
  TrialSpec trial;
  Strategy strategy;
};

// Validation. Each throws Error(kInvalidScenario) naming the bad field.
void validate(const EnvelopeScenario& sc);
void validate(const RailroadScenario& sc);
void validate(const WilloughbyScenario& sc);
void validate(const CoinBagScenario& sc);
void validate(const Scenario& sc);

/// 1 - (p + q) / 2 with p = F(S), q = 1 - F(L).
double envelope_psp(const EnvelopeScenario& sc);
/// r - (r - 1/2)(p + q) with p = F(S1), q = 1 - F(S2).
double railroad_psp(const RailroadScenario& sc);
/// 1 - (p + q) / 2 with p, q measured at the flanking stations.
double willoughby_psp(const WilloughbyScenario& sc);
/// 1/2 + (y_2 - y_1)(s_2 - 1/2) for one realization.
double coin_bag_psp(const CoinBagScenario& sc, const CoinRealization& realization);
/// Coin-bag PSP averaged over the parameter sampler.
double coin_bag_expected_psp(const CoinBagScenario& sc);

/// Success = "the opened envelope holds L"; predict success when the pointer
/// does not exceed the opened amount.
CompiledTrial envelope_to_trial(const EnvelopeScenario& sc);
/// Trial [(1/2, r), (1/2, 1 - r)], strategy (1 - p, q); success = east.
CompiledTrial railroad_to_trial(const RailroadScenario& sc);
/// Trial [(1/2, 1), (1/2, 0)], strategy (1 - p, q); success = east.
CompiledTrial willoughby_to_trial(const WilloughbyScenario& sc);
/// Trial [(1/2, s1), (1/2, s2)], y_k = P(pointer > parameter of coin k).
/// Throws kDegenerateRealization when the parameters tie and
/// kInvalidScenario when Coin 2's parameter is not the smaller.
CompiledTrial coin_bag_to_trial(const CoinBagScenario& sc, const CoinRealization& realization);
/// Strategy averaged over realizations. PSP is linear in y, so its PSP is
/// coin_bag_expected_psp.
CompiledTrial coin_bag_expected_trial(const CoinBagScenario& sc);

/// Compiled form of any scenario (coin bag: expected strategy).
CompiledTrial compile(const Scenario& sc);
/// Closed-form PSP of any scenario (coin bag: expected PSP).
double scenario_psp(const Scenario& sc);

/// Event-by-event simulation. `successes` counts the second-stage outcome
/// of the compiled trial (train goes east, heads, opened envelope is L).
/// Cells: railroad station * 2 + spinner (0 red, 1 blue); other scenarios
/// the compiled outcome index.
SimResult simulate_physical(const Scenario& sc, const SimOptions& opts);

/// Guesses of two Willoughby passengers sharing one pointer: one commits
/// before the direction coin is revealed, the other infers after. Pointer
/// and coin come from separate substreams of `seed`.
struct TimingComparison {
  std::vector<bool> before;  // true = guessed east
  std::vector<bool> after;
  std::uint64_t hits_before = 0;
  std::uint64_t hits_after = 0;
};

TimingComparison willoughby_timing(const WilloughbyScenario& sc, std::uint64_t n, std::uint64_t seed);

}  // namespace ebt
