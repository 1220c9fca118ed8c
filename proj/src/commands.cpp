#include "ebt/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "ebt/error.hpp"
#include "ebt/montecarlo.hpp"
#include "ebt/scenarios.hpp"
#include "ebt/verify.hpp"

namespace ebt {

using nlohmann::json;

namespace {

// Probabilities in CSV and text output: 15 significant digits, trailing zeros kept.
std::string num(double v) { return fmt::format("{:#.15g}", v); }

struct ResolvedSeed {
  std::uint64_t value;
  std::string_view source;  // cli, config, env, entropy
};

ResolvedSeed resolve_seed(std::optional<std::uint64_t> cli, std::optional<std::uint64_t> config) {
  if (cli) return {*cli, "cli"};
  if (config) return {*config, "config"};
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    std::istringstream in(env);
    if (!(in >> value) || !in.eof()) {
      throw Error(ErrorCode::kInvalidConfig, kSeedEnvVar, fmt::format("expected an unsigned integer, got '{}'", env));
    }
    return {value, "env"};
  }
  return {entropy_seed(), "entropy"};
}

json load_document(const CommandOptions& opts) {
  if (opts.config_path) {
    std::ifstream in(*opts.config_path);
    if (!in) throw Error(ErrorCode::kInvalidConfig, "--config", fmt::format("cannot open '{}'", *opts.config_path));
    try {
      return json::parse(in);
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kInvalidConfig, "--config", e.what());
    }
  }
  if (opts.config_document) return *opts.config_document;
  throw Error(ErrorCode::kInvalidConfig, "--config", "a config file is required for this command");
}

OutputFormat resolve_format(const CommandOptions& opts, const OutputConfig& cfg, OutputFormat fallback) {
  if (opts.format) return *opts.format;
  if (cfg.format) return *cfg.format;
  return fallback;
}

int emit(const CommandOptions& opts, const OutputConfig& cfg, const std::string& content, std::ostream& out,
         std::ostream& err) {
  const auto path = opts.out_path ? opts.out_path : cfg.path;
  if (!path) {
    out << content;
    return kExitOk;
  }
  std::ofstream file(*path);
  if (!file) {
    fmt::print(err, "error: cannot write '{}'\n", *path);
    return kExitUsage;
  }
  file << content;
  return kExitOk;
}

int usage_error(std::ostream& err, const std::exception& e) {
  fmt::print(err, "error: {}\n", e.what());
  return kExitUsage;
}

json sim_result_json(const SimResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back({{"trials", c.trials}, {"hits", c.hits}});
  return {{"n", r.n},
          {"hits", r.hits},
          {"successes", r.successes},
          {"empirical_psp", r.empirical_psp},
          {"std_error", r.std_error},
          {"ci_low", r.ci_low},
          {"ci_high", r.ci_high},
          {"seed", r.seed},
          {"partitions", r.partitions},
          {"partition_size", r.partition_size},
          {"cells", cells}};
}

json verdict_json(const std::optional<TestVerdict>& v) {
  if (!v) return nullptr;
  json reject = json::object();
  for (const auto& [alpha, rejected] : v->reject_at) reject[fmt::format("{}", alpha)] = rejected;
  return {{"p0", v->p0},
          {"alternative", v->alternative == Alternative::kGreater ? "greater" : "two_sided"},
          {"p_value", v->p_value},
          {"reject_at", reject}};
}

std::vector<double> as_vector(const Strategy& s) { return {s.y().begin(), s.y().end()}; }

// ---------------------------------------------------------------- analyze

struct AnalyzeOutput {
  std::string_view kind;
  AnalysisReport report;
  Strategy strategy;
  OptimalStrategy optimal;
  std::optional<double> scenario_psp;
};

AnalyzeOutput run_analysis(const ExperimentConfig& cfg) {
  const CompiledTrial compiled = compile(cfg.experiment);
  AnalyzeOutput out{kind_name(cfg.experiment), analyze(compiled.trial, compiled.strategy), compiled.strategy,
                    optimal_strategy(compiled.trial), std::nullopt};
  if (const auto sc = as_scenario(cfg.experiment)) out.scenario_psp = ebt::scenario_psp(*sc);
  return out;
}

std::string render_analysis(const AnalyzeOutput& a, OutputFormat format) {
  const AnalysisReport& r = a.report;
  switch (format) {
    case OutputFormat::kJson: {
      json doc{{"command", "analyze"},
               {"kind", a.kind},
               {"p", r.p},
               {"psp", r.psp},
               {"edge", r.edge},
               {"beats_chance", r.beats_chance},
               {"premium_bound", r.premium_bound},
               {"y", as_vector(a.strategy)},
               {"optimal_y", as_vector(a.optimal.strategy)},
               {"max_psp", a.optimal.psp}};
      if (a.scenario_psp) doc["scenario_psp"] = *a.scenario_psp;
      return doc.dump(2) + "\n";
    }
    case OutputFormat::kCsv:
      return fmt::format("kind,p,psp,edge,beats_chance,premium_bound,max_psp\n{},{},{},{},{},{},{}\n", a.kind,
                         num(r.p), num(r.psp), num(r.edge), r.beats_chance ? "true" : "false", num(r.premium_bound),
                         num(a.optimal.psp));
    case OutputFormat::kText: {
      std::string s = fmt::format("kind           {}\n", a.kind);
      s += fmt::format("p              {}\n", num(r.p));
      s += fmt::format("psp            {}\n", num(r.psp));
      s += fmt::format("edge           {}  (psp > p iff edge < 1)\n", num(r.edge));
      s += fmt::format("beats_chance   {}\n", r.beats_chance ? "true" : "false");
      s += fmt::format("premium_bound  {}\n", num(r.premium_bound));
      s += fmt::format("y              [{}]\n", fmt::join(a.strategy.y(), ", "));
      s += fmt::format("optimal y      [{}]  max psp {}\n", fmt::join(a.optimal.strategy.y(), ", "),
                       num(a.optimal.psp));
      if (a.scenario_psp) s += fmt::format("scenario psp   {}\n", num(*a.scenario_psp));
      return s;
    }
  }
  return {};
}

// --------------------------------------------------------------- simulate

struct SimulateOutput {
  std::string_view kind;
  std::string_view mode;
  double analytic_psp;
  SimResult result;
  std::optional<TestVerdict> test;
  std::optional<TestVerdict> success_rate_test;
  ResolvedSeed seed;
};

SimResult run_simulation(const ExperimentConfig& cfg, const CompiledTrial& compiled, std::uint64_t seed,
                         int workers) {
  SimOptions opts{cfg.simulation.n, seed, cfg.simulation.partition_size, workers, Execution::kParallel};
  if (const auto sc = as_scenario(cfg.experiment)) return simulate_physical(*sc, opts);
  return simulate_trial(compiled.trial, compiled.strategy, opts);
}

double analytic_value(const ExperimentConfig& cfg, const CompiledTrial& compiled) {
  if (const auto sc = as_scenario(cfg.experiment)) return scenario_psp(*sc);
  return analytic_psp(compiled.trial, compiled.strategy);
}

SimulateOutput run_simulate(const ExperimentConfig& cfg, ResolvedSeed seed, int workers) {
  const CompiledTrial compiled = compile(cfg.experiment);
  const double p0 = success_probability(compiled.trial);
  SimulateOutput out{kind_name(cfg.experiment),
                     as_scenario(cfg.experiment) ? "physical" : "abstract",
                     analytic_value(cfg, compiled),
                     run_simulation(cfg, compiled, seed.value, workers),
                     std::nullopt,
                     std::nullopt,
                     seed};
  if (p0 > 0.0 && p0 < 1.0) {
    out.test = binomial_test_greater(out.result, p0);
    out.success_rate_test = binomial_test_two_sided(out.result.successes, out.result.n, p0);
  }
  return out;
}

std::string railroad_table(const RailroadScenario& sc, const SimResult& r) {
  const double p = region_probability(sc.pointer, below(sc.s1_position));
  const double q = region_probability(sc.pointer, above(sc.s2_position));
  struct Row {
    const char* station;
    const char* spinner;
    const char* direction;
    double correct;
    double combined;
  };
  const Row rows[] = {
      {"S1", "red", "east", 1.0 - p, 0.5 * sc.r * (1.0 - p)},
      {"S1", "blue", "west", p, 0.5 * (1.0 - sc.r) * p},
      {"S2", "red", "west", 1.0 - q, 0.5 * sc.r * (1.0 - q)},
      {"S2", "blue", "east", q, 0.5 * (1.0 - sc.r) * q},
  };
  std::string s = fmt::format("{:<8}{:<8}{:<16}{:<24}{:<24}{:<24}\n", "Station", "Spinner", "Train Direction",
                              "P(pointer correct)", "Combined (analytic)", "Combined (empirical)");
  double total = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double empirical = i < r.cells.size() ? static_cast<double>(r.cells[i].hits) / static_cast<double>(r.n) : 0.0;
    s += fmt::format("{:<8}{:<8}{:<16}{:<24}{:<24}{:<24}\n", rows[i].station, rows[i].spinner, rows[i].direction,
                     num(rows[i].correct), num(rows[i].combined), num(empirical));
    total += rows[i].combined;
  }
  s += fmt::format("{:<56}{:<24}{:<24}\n", "Total", num(total), num(r.empirical_psp));
  return s;
}

std::string render_simulation(const SimulateOutput& s, const ExperimentConfig& cfg, OutputFormat format) {
  const SimResult& r = s.result;
  switch (format) {
    case OutputFormat::kJson: {
      json doc{{"command", "simulate"},
               {"kind", s.kind},
               {"mode", s.mode},
               {"analytic_psp", s.analytic_psp},
               {"seed", s.seed.value},
               {"seed_source", s.seed.source},
               {"result", sim_result_json(r)},
               {"test", verdict_json(s.test)},
               {"success_rate_test", verdict_json(s.success_rate_test)}};
      return doc.dump(2) + "\n";
    }
    case OutputFormat::kCsv: {
      const double p_value = s.test ? s.test->p_value : 1.0;
      return fmt::format(
          "kind,mode,n,hits,successes,empirical_psp,std_error,ci_low,ci_high,analytic_psp,p0,p_value,seed,partitions,"
          "partition_size\n{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
          s.kind, s.mode, r.n, r.hits, r.successes, num(r.empirical_psp), num(r.std_error), num(r.ci_low),
          num(r.ci_high), num(s.analytic_psp), s.test ? num(s.test->p0) : "", num(p_value), r.seed, r.partitions,
          r.partition_size);
    }
    case OutputFormat::kText: {
      std::string t = fmt::format("{} simulation ({}), n = {}, seed = {} ({})\n", s.kind, s.mode, r.n, r.seed,
                                  s.seed.source);
      t += fmt::format("analytic psp   {}\n", num(s.analytic_psp));
      t += fmt::format("empirical psp  {}  (se {}, 99% CI [{}, {}])\n", num(r.empirical_psp), num(r.std_error),
                       num(r.ci_low), num(r.ci_high));
      t += fmt::format("successes      {} / {}\n", r.successes, r.n);
      if (s.test) {
        t += fmt::format("hit rate > {}: p-value {}  reject at 0.05/0.01/0.001: {}/{}/{}\n", num(s.test->p0),
                         num(s.test->p_value), s.test->reject_at.at(0.05), s.test->reject_at.at(0.01),
                         s.test->reject_at.at(0.001));
      }
      if (s.success_rate_test) {
        t += fmt::format("success rate = {} (two-sided): p-value {}\n", num(s.success_rate_test->p0),
                         num(s.success_rate_test->p_value));
      }
      if (const auto* rr = std::get_if<RailroadScenario>(&cfg.experiment)) {
        t += "\n" + railroad_table(*rr, r);
      }
      return t;
    }
  }
  return {};
}

}  // namespace

json::json_pointer parameter_pointer(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::kInvalidConfig, "--param", "parameter path is empty");
  std::string pointer = "/";
  for (const char c : path) {
    if (c == '.' || c == '[') {
      pointer += '/';
    } else if (c != ']') {
      pointer += c;
    }
  }
  try {
    return json::json_pointer(pointer);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, "--param", e.what());
  }
}

int cmd_analyze(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig cfg = parse_config(load_document(opts));
    const AnalyzeOutput a = run_analysis(cfg);
    return emit(opts, cfg.output, render_analysis(a, resolve_format(opts, cfg.output, OutputFormat::kJson)), out,
                err);
  } catch (const Error& e) {
    return usage_error(err, e);
  }
}

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const ExperimentConfig cfg = parse_config(load_document(opts));
    const ResolvedSeed seed = resolve_seed(opts.seed, cfg.simulation.seed);
    const SimulateOutput s = run_simulate(cfg, seed, opts.workers);
    return emit(opts, cfg.output, render_simulation(s, cfg, resolve_format(opts, cfg.output, OutputFormat::kJson)),
                out, err);
  } catch (const Error& e) {
    return usage_error(err, e);
  }
}

int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const json base = load_document(opts);
    const ExperimentConfig base_cfg = parse_config(base);
    if (!opts.sweep_param) throw Error(ErrorCode::kInvalidConfig, "--param", "sweep needs a parameter path");
    if (!opts.sweep_values || opts.sweep_values->empty()) {
      throw Error(ErrorCode::kInvalidConfig, "--values", "sweep needs at least one value");
    }
    const json::json_pointer ptr = parameter_pointer(*opts.sweep_param);
    if (!base.contains(ptr) || !base.at(ptr).is_number()) {
      throw Error(ErrorCode::kInvalidConfig, *opts.sweep_param, "sweep parameter must name a numeric config field");
    }
    // Only the simulation block holds counts; every other numeric field is real.
    const bool integral = opts.sweep_param->starts_with("simulation.");

    // Validate every value before producing any row.
    std::vector<ExperimentConfig> configs;
    const auto& values = *opts.sweep_values;
    for (std::size_t i = 0; i < values.size(); ++i) {
      json doc = base;
      if (integral) {
        if (values[i] < 0.0 || values[i] != std::floor(values[i])) {
          throw Error(ErrorCode::kInvalidConfig, *opts.sweep_param,
                      fmt::format("sweep value #{} ({}) must be a nonnegative integer", i, values[i]));
        }
        doc[ptr] = static_cast<std::uint64_t>(values[i]);
      } else {
        doc[ptr] = values[i];
      }
      try {
        configs.push_back(parse_config(doc));
        compile(configs.back().experiment);
      } catch (const Error& e) {
        throw Error(e.code(), e.field(), fmt::format("sweep value #{} ({}) rejected: {}", i, values[i], e.message()));
      }
    }

    const ResolvedSeed seed = resolve_seed(opts.seed, base_cfg.simulation.seed);
    const OutputFormat format = resolve_format(opts, base_cfg.output, OutputFormat::kCsv);
    json rows = json::array();
    std::string csv = "param,value,p,analytic_psp,empirical_psp,ci_low,ci_high\n";
    for (std::size_t i = 0; i < configs.size(); ++i) {
      const CompiledTrial compiled = compile(configs[i].experiment);
      const double p = success_probability(compiled.trial);
      const double psp = analytic_value(configs[i], compiled);
      std::optional<SimResult> sim;
      if (opts.sweep_simulate) sim = run_simulation(configs[i], compiled, seed.value, opts.workers);
      csv += fmt::format("{},{},{},{},{},{},{}\n", *opts.sweep_param, values[i], num(p), num(psp),
                         sim ? num(sim->empirical_psp) : "", sim ? num(sim->ci_low) : "",
                         sim ? num(sim->ci_high) : "");
      json row{{"param", *opts.sweep_param}, {"value", values[i]}, {"p", p}, {"analytic_psp", psp}};
      if (sim) {
        row["empirical_psp"] = sim->empirical_psp;
        row["ci_low"] = sim->ci_low;
        row["ci_high"] = sim->ci_high;
      }
      rows.push_back(row);
    }

    std::string content;
    if (format == OutputFormat::kCsv) {
      content = csv;
    } else if (format == OutputFormat::kJson) {
      json doc{{"command", "sweep"}, {"kind", kind_name(base_cfg.experiment)}, {"rows", rows}};
      if (opts.sweep_simulate) doc["seed"] = seed.value;
      content = doc.dump(2) + "\n";
    } else {
      content = fmt::format("{:<24}{:<20}{:<20}{:<20}\n", *opts.sweep_param, "p", "analytic_psp", "empirical_psp");
      for (const auto& row : rows) {
        content += fmt::format("{:<24}{:<20}{:<20}{:<20}\n", row["value"].get<double>(),
                               num(row["p"].get<double>()), num(row["analytic_psp"].get<double>()),
                               row.contains("empirical_psp") ? num(row["empirical_psp"].get<double>()) : "-");
      }
    }
    return emit(opts, base_cfg.output, content, out, err);
  } catch (const Error& e) {
    return usage_error(err, e);
  }
}

int cmd_verify_theorems(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  ResolvedSeed seed{0, "cli"};
  try {
    if (opts.instances == 0) {
      throw Error(ErrorCode::kInvalidConfig, "--instances", "instance count must be at least 1");
    }
    seed = resolve_seed(opts.seed, std::nullopt);
  } catch (const Error& e) {
    return usage_error(err, e);
  }

  const auto suites = verify::run_theorem_suites(seed.value, opts.instances);

  // The three-outcome table: distinct y, PSP > p, yet y is not ordered by s.
  const TrialSpec table = validate_trial({{0.2, 0.3}, {0.3, 0.5}, {0.5, 0.7}});
  const Strategy table_y{0.1, 0.9, 0.7};
  std::string non_example;
  try {
    check_theorem2(table, table_y);
    non_example = "unexpectedly accepted";
  } catch (const Error& e) {
    non_example = std::string(to_string(e.code()));
  }

  bool passed = true;
  for (const auto& s : suites) passed = passed && s.passed();

  const OutputFormat format = opts.format.value_or(OutputFormat::kText);
  std::string content;
  if (format == OutputFormat::kJson) {
    json list = json::array();
    for (const auto& s : suites) {
      list.push_back({{"name", s.name},
                      {"checked", s.checked},
                      {"applicable", s.applicable},
                      {"violations", s.violations},
                      {"passed", s.passed()},
                      {"counterexamples", s.counterexamples}});
    }
    json doc{{"command", "verify-theorems"},
             {"seed", seed.value},
             {"seed_source", seed.source},
             {"instances", opts.instances},
             {"suites", list},
             {"three_outcome_table",
              {{"p", success_probability(table)},
               {"psp", analytic_psp(table, table_y)},
               {"theorem2_check", non_example}}},
             {"passed", passed}};
    content = doc.dump(2) + "\n";
  } else if (format == OutputFormat::kCsv) {
    content = "suite,checked,applicable,violations,passed\n";
    for (const auto& s : suites) {
      content += fmt::format("{},{},{},{},{}\n", s.name, s.checked, s.applicable, s.violations, s.passed());
    }
  } else {
    content = fmt::format("theorem suites, seed = {} ({}), {} instances each\n", seed.value, seed.source,
                          opts.instances);
    content += fmt::format("{:<22}{:>10}{:>12}{:>12}  {}\n", "suite", "checked", "applicable", "violations", "result");
    for (const auto& s : suites) {
      content += fmt::format("{:<22}{:>10}{:>12}{:>12}  {}\n", s.name, s.checked, s.applicable, s.violations,
                             s.passed() ? "PASS" : "FAIL");
      for (const auto& c : s.counterexamples) content += fmt::format("  counterexample: {}\n", c);
    }
    content += fmt::format(
        "three-outcome table p={} psp={}: theorem2 check -> {} (y ordering need not follow s when N > 2)\n",
        num(success_probability(table)), num(analytic_psp(table, table_y)), non_example);
  }
  const int written = emit(opts, OutputConfig{}, content, out, err);
  if (written != kExitOk) return written;
  return passed ? kExitOk : kExitViolation;
}

}  // namespace ebt
