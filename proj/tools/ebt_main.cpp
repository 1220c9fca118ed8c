// ebt: analyze, simulate, sweep and verify extended Bernoulli trials.

#include <charconv>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebt/commands.hpp"
#include "ebt/error.hpp"

namespace {

void add_common(CLI::App* cmd, ebt::CommandOptions& opts, std::string& format, bool with_config) {
  if (with_config) {
    cmd->add_option_function<std::string>(
           "--config", [&opts](const std::string& path) { opts.config_path = path; }, "Experiment config (JSON)")
        ->check(CLI::ExistingFile);
  }
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&opts](std::uint64_t seed) { opts.seed = seed; }, "Master seed (overrides the config)");
  cmd->add_option_function<std::string>(
      "--out", [&opts](const std::string& path) { opts.out_path = path; }, "Write the report here instead of stdout");
  cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--workers", opts.workers, "Worker threads for simulations (0: all)")
      ->check(CLI::NonNegativeNumber);
}

// Empty items are dropped; nullopt when any item is not a complete number.
std::optional<std::vector<double>> parse_values(const std::vector<std::string>& items) {
  std::vector<double> values;
  for (const auto& item : items) {
    if (item.empty()) continue;
    double v = 0.0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || end != item.data() + item.size()) return std::nullopt;
    values.push_back(v);
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prediction-success analysis and simulation for extended Bernoulli trials", "ebt"};
  app.require_subcommand(1);

  ebt::CommandOptions opts;
  std::string format;
  std::vector<std::string> values;

  auto* analyze = app.add_subcommand("analyze", "Closed-form p, PSP, edge and premium");
  add_common(analyze, opts, format, true);

  auto* simulate = app.add_subcommand("simulate", "Seeded Monte Carlo run with binomial tests");
  add_common(simulate, opts, format, true);

  auto* sweep = app.add_subcommand("sweep", "Vary one numeric config field and tabulate PSP");
  add_common(sweep, opts, format, true);
  sweep->add_option_function<std::string>(
      "--param", [&opts](const std::string& p) { opts.sweep_param = p; }, "Field path, e.g. r or y[1]");
  sweep->add_option("--values", values, "Values to sweep")->delimiter(',');
  sweep->add_flag("--simulate", opts.sweep_simulate, "Add empirical PSP columns");

  auto* verify = app.add_subcommand("verify-theorems", "Randomized checks of the closed-form results");
  add_common(verify, opts, format, false);
  verify->add_option("--instances", opts.instances, "Instances per suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ebt::kExitUsage;
  }

  try {
    if (!format.empty()) opts.format = ebt::parse_output_format(format);
  } catch (const ebt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ebt::kExitUsage;
  }
  if (sweep->parsed()) {
    opts.sweep_values = parse_values(values);
    if (!opts.sweep_values) {
      std::cerr << "error: --values expects a comma-separated list of numbers\n";
      return ebt::kExitUsage;
    }
  }

  if (analyze->parsed()) return ebt::cmd_analyze(opts, std::cout, std::cerr);
  if (simulate->parsed()) return ebt::cmd_simulate(opts, std::cout, std::cerr);
  if (sweep->parsed()) return ebt::cmd_sweep(opts, std::cout, std::cerr);
  return ebt::cmd_verify_theorems(opts, std::cout, std::cerr);
}
