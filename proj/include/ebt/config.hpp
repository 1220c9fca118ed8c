#pragma once

// Experiment configuration: one JSON document per experiment.
//
//   {
//     "kind": "abstract_trial" | "envelope" | "railroad" | "willoughby" | "coin_bag",
//     ...kind-specific fields...,
//     "simulation": {"n": 1000000, "seed": 42, "partition_size": 65536},
//     "output": {"format": "json" | "csv" | "text", "path": "report.json"}
//   }
//
// Kind-specific fields:
//   abstract_trial  outcomes: [{"weight", "success_prob"}...], y: [...] (optional;
//                   the optimal strategy is used when absent)
//   envelope        small_amount, large_amount, pointer
//   railroad        s1_position, s2_position, r, pointer
//   willoughby      west_station, current_station, east_station, pointer
//   coin_bag        s1, s2, model ("position" | "mass" | "time"),
//                   parameter_sampler ("uniform:lo,hi" or a pointer spec), pointer
//
// Pointer fields take "normal:mu,sigma", "cauchy:x0,gamma", "logistic:mu,s" or
// "exponential:rate". Every field except kind and the kind's required numbers
// has a default.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "ebt/core.hpp"
#include "ebt/engine.hpp"
#include "ebt/scenarios.hpp"

namespace ebt {

enum class OutputFormat { kJson, kCsv, kText };

std::string_view to_string(OutputFormat format);
/// Throws Error(kInvalidConfig) for unknown names.
OutputFormat parse_output_format(std::string_view name);

struct AbstractTrialConfig {
  TrialSpec trial;
  std::optional<Strategy> strategy;

  bool operator==(const AbstractTrialConfig&) const = default;
};

using Experiment =
    std::variant<AbstractTrialConfig, EnvelopeScenario, RailroadScenario, WilloughbyScenario, CoinBagScenario>;

struct SimulationConfig {
  std::uint64_t n = 100000;
  std::optional<std::uint64_t> seed;
  std::uint64_t partition_size = kDefaultPartitionSize;

  bool operator==(const SimulationConfig&) const = default;
};

struct OutputConfig {
  std::optional<OutputFormat> format;
  std::optional<std::string> path;

  bool operator==(const OutputConfig&) const = default;
};

struct ExperimentConfig {
  Experiment experiment;
  SimulationConfig simulation;
  OutputConfig output;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ebt::Error whose field() names the offending JSON path.
ExperimentConfig parse_config(const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& config);

std::string_view kind_name(const Experiment& experiment);

/// (TrialSpec, Strategy) for any experiment; an abstract trial without an
/// explicit strategy gets the optimal one.
CompiledTrial compile(const Experiment& experiment);

/// Physical scenario, or nullopt for abstract trials.
std::optional<Scenario> as_scenario(const Experiment& experiment);

}  // namespace ebt
