#pragma once

// Subcommands of the `ebt` tool, callable in-process.
//
// Exit codes are stable across commands: 0 success, 1 property violation,
// 2 usage or configuration error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ebt/config.hpp"

namespace ebt {

enum ExitCode : int {
  kExitOk = 0,
  kExitViolation = 1,
  kExitUsage = 2,
};

/// Environment variable consulted when neither --seed nor the config gives one.
inline constexpr const char* kSeedEnvVar = "EBT_DEFAULT_SEED";

struct CommandOptions {
  std::optional<std::string> config_path;
  std::optional<nlohmann::json> config_document;  // used when config_path is empty
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  std::optional<OutputFormat> format;
  int workers = 0;

  // sweep
  std::optional<std::string> sweep_param;
  std::optional<std::vector<double>> sweep_values;
  bool sweep_simulate = false;

  // verify-theorems
  std::uint64_t instances = 1000;
};

int cmd_analyze(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify_theorems(const CommandOptions& opts, std::ostream& out, std::ostream& err);

/// Converts "outcomes[0].success_prob" style paths to JSON pointers.
nlohmann::json::json_pointer parameter_pointer(const std::string& path);

}  // namespace ebt
