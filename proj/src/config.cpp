#include "ebt/config.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "ebt/error.hpp"

namespace ebt {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, field, message);
}

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) bad(key, "missing required field");
  return *it;
}

double number(const json& value, const std::string& field) {
  if (!value.is_number()) bad(field, fmt::format("expected a number, got {}", value.dump()));
  const double v = value.get<double>();
  if (!std::isfinite(v)) bad(field, "expected a finite number");
  return v;
}

double number_or(const json& obj, const char* key, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, key);
}

std::uint64_t count(const json& value, const std::string& field) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (!value.is_number_integer() || value.get<std::int64_t>() < 0) {
    bad(field, fmt::format("expected a nonnegative integer, got {}", value.dump()));
  }
  return static_cast<std::uint64_t>(value.get<std::int64_t>());
}

std::string text(const json& value, const std::string& field) {
  if (!value.is_string()) bad(field, fmt::format("expected a string, got {}", value.dump()));
  return value.get<std::string>();
}

template <class T, class Parse>
T parse_field(const json& obj, const char* key, T fallback, Parse parse) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return parse(text(*it, key));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidConfig) throw;
    bad(key, e.message());
  }
}

PointerDistribution pointer_or(const json& obj, PointerDistribution fallback) {
  return parse_field(obj, "pointer", fallback, [](const std::string& s) { return PointerDistribution::parse(s); });
}

void reject_unknown_keys(const json& doc, std::initializer_list<const char*> kind_keys) {
  std::set<std::string> allowed{"kind", "simulation", "output"};
  allowed.insert(kind_keys.begin(), kind_keys.end());
  for (const auto& [key, _] : doc.items()) {
    if (!allowed.contains(key)) bad(key, "unknown field for this kind");
  }
}

// Scenario types validate with their own field names; configs report the same names.
template <class S>
S validated(S sc) {
  try {
    validate(sc);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidConfig, e.field(), e.message());
  }
  return sc;
}

AbstractTrialConfig parse_abstract(const json& doc) {
  reject_unknown_keys(doc, {"outcomes", "y"});
  const json& outcomes = require(doc, "outcomes");
  if (!outcomes.is_array()) bad("outcomes", "expected an array of {weight, success_prob} objects");
  std::vector<Outcome> raw;
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const json& o = outcomes[k];
    const std::string prefix = fmt::format("outcomes[{}]", k);
    if (!o.is_object()) bad(prefix, "expected an object with weight and success_prob");
    const auto w = o.find("weight");
    const auto s = o.find("success_prob");
    if (w == o.end()) bad(prefix + ".weight", "missing required field");
    if (s == o.end()) bad(prefix + ".success_prob", "missing required field");
    raw.push_back({number(*w, prefix + ".weight"), number(*s, prefix + ".success_prob")});
  }
  AbstractTrialConfig cfg{validate_trial(std::move(raw)), std::nullopt};
  if (const auto y = doc.find("y"); y != doc.end()) {
    if (!y->is_array()) bad("y", "expected an array of probabilities");
    std::vector<double> values;
    for (std::size_t k = 0; k < y->size(); ++k) values.push_back(number((*y)[k], fmt::format("y[{}]", k)));
    if (values.size() != cfg.trial.size()) {
      throw Error(ErrorCode::kLengthMismatch, "y",
                  fmt::format("y has {} entries, outcomes has {}", values.size(), cfg.trial.size()));
    }
    cfg.strategy = Strategy(std::move(values));
  }
  return cfg;
}

EnvelopeScenario parse_envelope(const json& doc) {
  reject_unknown_keys(doc, {"small_amount", "large_amount", "pointer"});
  EnvelopeScenario sc;
  sc.small_amount = number(require(doc, "small_amount"), "small_amount");
  sc.large_amount = number(require(doc, "large_amount"), "large_amount");
  sc.pointer = pointer_or(doc, sc.pointer);
  return validated(sc);
}

RailroadScenario parse_railroad(const json& doc) {
  reject_unknown_keys(doc, {"s1_position", "s2_position", "r", "pointer"});
  RailroadScenario sc;
  sc.s1_position = number(require(doc, "s1_position"), "s1_position");
  sc.s2_position = number(require(doc, "s2_position"), "s2_position");
  sc.r = number(require(doc, "r"), "r");
  sc.pointer = pointer_or(doc, sc.pointer);
  return validated(sc);
}

WilloughbyScenario parse_willoughby(const json& doc) {
  reject_unknown_keys(doc, {"west_station", "current_station", "east_station", "pointer"});
  WilloughbyScenario sc;
  sc.west_station = number(require(doc, "west_station"), "west_station");
  sc.current_station = number(require(doc, "current_station"), "current_station");
  sc.east_station = number(require(doc, "east_station"), "east_station");
  sc.pointer = pointer_or(doc, sc.pointer);
  return validated(sc);
}

CoinBagScenario parse_coin_bag(const json& doc) {
  reject_unknown_keys(doc, {"s1", "s2", "model", "parameter_sampler", "pointer"});
  CoinBagScenario sc;
  sc.s1 = number_or(doc, "s1", sc.s1);
  sc.s2 = number_or(doc, "s2", sc.s2);
  sc.model = parse_field(doc, "model", sc.model, [](const std::string& s) { return parse_pointer_model(s); });
  sc.parameter_sampler = parse_field(doc, "parameter_sampler", sc.parameter_sampler,
                                     [](const std::string& s) { return ParameterSampler::parse(s); });
  sc.pointer = pointer_or(doc, sc.pointer);
  return validated(sc);
}

SimulationConfig parse_simulation(const json& doc) {
  SimulationConfig sim;
  const auto it = doc.find("simulation");
  if (it == doc.end()) return sim;
  if (!it->is_object()) bad("simulation", "expected an object");
  for (const auto& [key, value] : it->items()) {
    const std::string field = "simulation." + key;
    if (key == "n") {
      sim.n = count(value, field);
      if (sim.n == 0) bad(field, "at least one trial is required");
    } else if (key == "seed") {
      sim.seed = count(value, field);
    } else if (key == "partition_size") {
      sim.partition_size = count(value, field);
      if (sim.partition_size == 0) bad(field, "partition size must be positive");
    } else {
      bad(field, "unknown field");
    }
  }
  return sim;
}

OutputConfig parse_output(const json& doc) {
  OutputConfig out;
  const auto it = doc.find("output");
  if (it == doc.end()) return out;
  if (!it->is_object()) bad("output", "expected an object");
  for (const auto& [key, value] : it->items()) {
    const std::string field = "output." + key;
    if (key == "format") {
      out.format = parse_output_format(text(value, field));
    } else if (key == "path") {
      if (!value.is_null()) out.path = text(value, field);
    } else {
      bad(field, "unknown field");
    }
  }
  return out;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson: return "json";
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kText: return "text";
  }
  return "json";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "text") return OutputFormat::kText;
  throw Error(ErrorCode::kInvalidConfig, "output.format", fmt::format("expected json, csv or text, got '{}'", name));
}

ExperimentConfig parse_config(const json& doc) {
  if (!doc.is_object()) bad("", "config must be a JSON object");
  const std::string kind = text(require(doc, "kind"), "kind");
  ExperimentConfig cfg{AbstractTrialConfig{validate_trial({{1.0, 0.5}}), std::nullopt}, {}, {}};
  if (kind == "abstract_trial") {
    cfg.experiment = parse_abstract(doc);
  } else if (kind == "envelope") {
    cfg.experiment = parse_envelope(doc);
  } else if (kind == "railroad") {
    cfg.experiment = parse_railroad(doc);
  } else if (kind == "willoughby") {
    cfg.experiment = parse_willoughby(doc);
  } else if (kind == "coin_bag") {
    cfg.experiment = parse_coin_bag(doc);
  } else {
    bad("kind", fmt::format("unknown kind '{}'", kind));
  }
  cfg.simulation = parse_simulation(doc);
  cfg.output = parse_output(doc);
  return cfg;
}

json to_json(const ExperimentConfig& config) {
  json doc = std::visit(
      Overloaded{
          [](const AbstractTrialConfig& c) {
            json d{{"kind", "abstract_trial"}, {"outcomes", json::array()}};
            for (const auto& o : c.trial.outcomes()) {
              d["outcomes"].push_back({{"weight", o.weight}, {"success_prob", o.success_prob}});
            }
            if (c.strategy) d["y"] = std::vector<double>(c.strategy->y().begin(), c.strategy->y().end());
            return d;
          },
          [](const EnvelopeScenario& s) {
            return json{{"kind", "envelope"},
                        {"small_amount", s.small_amount},
                        {"large_amount", s.large_amount},
                        {"pointer", s.pointer.to_string()}};
          },
          [](const RailroadScenario& s) {
            return json{{"kind", "railroad"},
                        {"s1_position", s.s1_position},
                        {"s2_position", s.s2_position},
                        {"r", s.r},
                        {"pointer", s.pointer.to_string()}};
          },
          [](const WilloughbyScenario& s) {
            return json{{"kind", "willoughby"},
                        {"west_station", s.west_station},
                        {"current_station", s.current_station},
                        {"east_station", s.east_station},
                        {"pointer", s.pointer.to_string()}};
          },
          [](const CoinBagScenario& s) {
            return json{{"kind", "coin_bag"},
                        {"s1", s.s1},
                        {"s2", s.s2},
                        {"model", std::string(to_string(s.model))},
                        {"parameter_sampler", s.parameter_sampler.to_string()},
                        {"pointer", s.pointer.to_string()}};
          },
      },
      config.experiment);
  json sim{{"n", config.simulation.n}, {"partition_size", config.simulation.partition_size}};
  if (config.simulation.seed) sim["seed"] = *config.simulation.seed;
  doc["simulation"] = sim;
  json out = json::object();
  if (config.output.format) out["format"] = std::string(to_string(*config.output.format));
  if (config.output.path) out["path"] = *config.output.path;
  doc["output"] = out;
  return doc;
}

std::string_view kind_name(const Experiment& experiment) {
  return std::visit(Overloaded{
                        [](const AbstractTrialConfig&) { return std::string_view("abstract_trial"); },
                        [](const EnvelopeScenario&) { return std::string_view("envelope"); },
                        [](const RailroadScenario&) { return std::string_view("railroad"); },
                        [](const WilloughbyScenario&) { return std::string_view("willoughby"); },
                        [](const CoinBagScenario&) { return std::string_view("coin_bag"); },
                    },
                    experiment);
}

CompiledTrial compile(const Experiment& experiment) {
  if (const auto* c = std::get_if<AbstractTrialConfig>(&experiment)) {
    return {c->trial, c->strategy ? *c->strategy : optimal_strategy(c->trial).strategy};
  }
  return compile(*as_scenario(experiment));
}

std::optional<Scenario> as_scenario(const Experiment& experiment) {
  return std::visit(Overloaded{
                        [](const AbstractTrialConfig&) -> std::optional<Scenario> { return std::nullopt; },
                        [](const auto& s) -> std::optional<Scenario> { return Scenario(s); },
                    },
                    experiment);
}

}  // namespace ebt
