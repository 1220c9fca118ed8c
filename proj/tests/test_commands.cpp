#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ebt/commands.hpp"

using namespace ebt;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

template <class Command>
Run run(Command command, const CommandOptions& opts) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = command(opts, out, err);
  return {code, out.str(), err.str()};
}

CommandOptions with_doc(const json& doc) {
  CommandOptions opts;
  opts.config_document = doc;
  return opts;
}

CommandOptions with_file(const std::string& name) {
  CommandOptions opts;
  opts.config_path = std::string(EBT_SOURCE_DIR) + "/configs/" + name + ".json";
  return opts;
}

json two_outcome(double y1, double y2) {
  return {{"kind", "abstract_trial"},
          {"outcomes", {{{"weight", 0.5}, {"success_prob", 0.3}}, {{"weight", 0.5}, {"success_prob", 0.8}}}},
          {"y", {y1, y2}}};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream cols(line);
    for (std::string cell; std::getline(cols, cell, ',');) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::size_t significant_digits(const std::string& number) {
  std::size_t digits = 0;
  bool leading = true;
  for (char c : number) {
    if (c == 'e' || c == 'E') break;
    if (c < '0' || c > '9') continue;
    if (leading && c == '0') continue;
    leading = false;
    ++digits;
  }
  return digits;
}

class ScopedEnv {
 public:
  explicit ScopedEnv(const char* value) {
    if (value) {
      ::setenv(kSeedEnvVar, value, 1);
    } else {
      ::unsetenv(kSeedEnvVar);
    }
  }
  ~ScopedEnv() { ::unsetenv(kSeedEnvVar); }
};

}  // namespace

TEST_CASE("analyze reports the table numbers") {
  const Run r = run(cmd_analyze, with_file("table_n3"));
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["p"].get<double>() == doctest::Approx(0.56).epsilon(1e-12));
  CHECK(doc["psp"].get<double>() == doctest::Approx(0.572).epsilon(1e-12));
  CHECK(doc["beats_chance"].get<bool>());
}

TEST_CASE("analyze with a single outcome never beats chance") {
  const json doc{{"kind", "abstract_trial"}, {"outcomes", {{{"weight", 1.0}, {"success_prob", 0.7}}}}, {"y", {0.4}}};
  const Run r = run(cmd_analyze, with_doc(doc));
  REQUIRE(r.code == kExitOk);
  CHECK_FALSE(json::parse(r.out)["beats_chance"].get<bool>());
}

TEST_CASE("malformed weights exit 2 and name the field") {
  json doc = two_outcome(0.1, 0.9);
  doc["outcomes"][0]["weight"] = 0.7;
  const Run r = run(cmd_analyze, with_doc(doc));
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("outcomes[") != std::string::npos);
  CHECK(r.err.find("weight") != std::string::npos);
  CHECK(r.out.empty());

  CommandOptions missing;
  missing.config_path = "/nonexistent/config.json";
  CHECK(run(cmd_analyze, missing).code == kExitUsage);
  CHECK(run(cmd_analyze, CommandOptions{}).code == kExitUsage);
}

TEST_CASE("analyze formats") {
  CommandOptions opts = with_file("two_coins");
  opts.format = OutputFormat::kCsv;
  const Run csv = run(cmd_analyze, opts);
  REQUIRE(csv.code == kExitOk);
  const auto rows = csv_rows(csv.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "kind");
  opts.format = OutputFormat::kText;
  const Run text = run(cmd_analyze, opts);
  CHECK(text.code == kExitOk);
  CHECK(text.out.find("0.65") != std::string::npos);
}

TEST_CASE("simulate railroad at n = 1e6") {
  CommandOptions opts = with_file("railroad");
  opts.format = OutputFormat::kJson;
  const Run r = run(cmd_simulate, opts);
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["mode"] == "physical");
  CHECK(doc["analytic_psp"].get<double>() == doctest::Approx(0.70).epsilon(1e-12));
  CHECK(std::abs(doc["result"]["empirical_psp"].get<double>() - 0.70) < 0.00137);
  CHECK(doc["test"]["p0"].get<double>() == 0.5);
}

TEST_CASE("simulate railroad text output carries the event table") {
  const Run r = run(cmd_simulate, with_file("railroad"));
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("S1") != std::string::npos);
  CHECK(r.out.find("S2") != std::string::npos);
  CHECK(r.out.find("red") != std::string::npos);
  CHECK(r.out.find("blue") != std::string::npos);
}

TEST_CASE("simulate coin bag rejects chance at 0.001") {
  const Run r = run(cmd_simulate, with_file("coin_bag"));
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["result"]["empirical_psp"].get<double>() > 0.5);
  CHECK(doc["test"]["reject_at"]["0.001"].get<bool>());
  CHECK_FALSE(doc["success_rate_test"]["reject_at"]["0.01"].get<bool>());
}

TEST_CASE("simulate smoke run with one trial") {
  json doc = two_outcome(0.2, 0.9);
  doc["simulation"] = {{"n", 1}, {"seed", 3}};
  const Run r = run(cmd_simulate, with_doc(doc));
  REQUIRE(r.code == kExitOk);
  const json parsed = json::parse(r.out);
  CHECK(parsed.is_object());
  CHECK(parsed["result"]["n"] == 1);
  CHECK(parsed["mode"] == "abstract");
  CHECK(parsed["test"]["p0"].get<double>() == doctest::Approx(0.55));
}

TEST_CASE("seed precedence: flag, config, environment, entropy") {
  json doc = two_outcome(0.2, 0.9);
  doc["simulation"] = {{"n", 100}};
  const auto seed_of = [](const CommandOptions& opts) {
    const Run r = run(cmd_simulate, opts);
    REQUIRE(r.code == kExitOk);
    const json parsed = json::parse(r.out);
    return std::pair{parsed["seed"].get<std::uint64_t>(), parsed["seed_source"].get<std::string>()};
  };
  {
    ScopedEnv env("31");
    CHECK(seed_of(with_doc(doc)) == std::pair<std::uint64_t, std::string>{31, "env"});
    json seeded = doc;
    seeded["simulation"]["seed"] = 77;
    CHECK(seed_of(with_doc(seeded)) == std::pair<std::uint64_t, std::string>{77, "config"});
    CommandOptions flag = with_doc(seeded);
    flag.seed = 5;
    CHECK(seed_of(flag) == std::pair<std::uint64_t, std::string>{5, "cli"});
  }
  {
    ScopedEnv env(nullptr);
    CHECK(seed_of(with_doc(doc)).second == "entropy");
  }
  {
    ScopedEnv env("twelve");
    CHECK(run(cmd_simulate, with_doc(doc)).code == kExitUsage);
  }
}

TEST_CASE("same seed, same report") {
  json doc = two_outcome(0.2, 0.9);
  doc["simulation"] = {{"n", 50000}, {"seed", 9}};
  CommandOptions one = with_doc(doc);
  one.workers = 1;
  CommandOptions many = with_doc(doc);
  many.workers = 8;
  CHECK(run(cmd_simulate, one).out == run(cmd_simulate, many).out);
}

TEST_CASE("sweep r: analytic PSP strictly increasing") {
  CommandOptions opts = with_file("railroad");
  opts.sweep_param = "r";
  opts.format = OutputFormat::kCsv;
  opts.sweep_values = std::vector<double>{0.55, 0.65, 0.75, 0.85, 0.95};
  const Run r = run(cmd_sweep, opts);
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"param", "value", "p", "analytic_psp", "empirical_psp", "ci_low", "ci_high"});
  double previous = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 7);
    CHECK(rows[i][0] == "r");
    const double psp = std::stod(rows[i][3]);
    CHECK(psp > previous);
    previous = psp;
    CHECK(rows[i][4].empty());
  }
}

TEST_CASE("sweep y[1]: PSP nondecreasing when s_2 > 1/2") {
  CommandOptions opts = with_doc(two_outcome(0.4, 0.0));
  opts.sweep_param = "y[1]";
  opts.sweep_values = std::vector<double>{0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
  opts.format = OutputFormat::kJson;
  const Run r = run(cmd_sweep, opts);
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  REQUIRE(doc["rows"].size() == 7);
  for (std::size_t i = 1; i < 7; ++i) {
    CHECK(doc["rows"][i]["analytic_psp"].get<double>() >= doc["rows"][i - 1]["analytic_psp"].get<double>());
  }
}

TEST_CASE("sweep with simulation fills the empirical columns") {
  json doc = two_outcome(0.2, 0.9);
  doc["simulation"] = {{"n", 20000}, {"seed", 1}};
  CommandOptions opts = with_doc(doc);
  opts.sweep_param = "outcomes[1].success_prob";
  opts.format = OutputFormat::kCsv;
  opts.sweep_values = std::vector<double>{0.6, 0.9};
  opts.sweep_simulate = true;
  const Run r = run(cmd_sweep, opts);
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 1; i < 3; ++i) {
    const double low = std::stod(rows[i][5]);
    const double mid = std::stod(rows[i][4]);
    const double high = std::stod(rows[i][6]);
    CHECK(low <= mid);
    CHECK(mid <= high);
  }
}

TEST_CASE("sweep errors") {
  CommandOptions opts = with_file("railroad");
  opts.sweep_param = "r";
  opts.sweep_values = std::vector<double>{};
  CHECK(run(cmd_sweep, opts).code == kExitUsage);

  opts.sweep_values = std::vector<double>{0.6, 0.7, 1.2, 0.8};
  const Run bad = run(cmd_sweep, opts);
  CHECK(bad.code == kExitUsage);
  CHECK(bad.out.empty());
  CHECK(bad.err.find("#2") != std::string::npos);

  opts.sweep_param = "pointer";
  opts.sweep_values = std::vector<double>{1.0};
  CHECK(run(cmd_sweep, opts).code == kExitUsage);
  opts.sweep_param = "no_such_field";
  CHECK(run(cmd_sweep, opts).code == kExitUsage);
}

TEST_CASE("parameter paths map to JSON pointers") {
  CHECK(parameter_pointer("outcomes[0].success_prob").to_string() == "/outcomes/0/success_prob");
  CHECK(parameter_pointer("r").to_string() == "/r");
  CHECK(parameter_pointer("simulation.n").to_string() == "/simulation/n");
}

TEST_CASE("verify-theorems exit codes") {
  CommandOptions opts;
  opts.seed = 11;
  opts.instances = 300;
  opts.format = OutputFormat::kJson;
  const Run r = run(cmd_verify_theorems, opts);
  CHECK(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc["passed"].get<bool>());
  CHECK(doc["suites"].size() == 5);
  CHECK(doc.dump().find("WrongArity") != std::string::npos);

  opts.instances = 0;
  CHECK(run(cmd_verify_theorems, opts).code == kExitUsage);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = std::filesystem::temp_directory_path() / "ebt_test_out.json";
  std::filesystem::remove(path);
  CommandOptions opts = with_file("table_n3");
  opts.out_path = path.string();
  const Run r = run(cmd_analyze, opts);
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  const json doc = json::parse(in);
  CHECK(doc["psp"].get<double>() == doctest::Approx(0.572));
  std::filesystem::remove(path);

  opts.out_path = "/nonexistent/dir/out.json";
  CHECK(run(cmd_analyze, opts).code == kExitUsage);
}

TEST_CASE("CSV probabilities carry at least 12 significant digits") {
  CommandOptions opts = with_file("willoughby");
  opts.sweep_param = "east_station";
  opts.sweep_values = std::vector<double>{1.3, 2.7};
  const Run r = run(cmd_sweep, opts);
  REQUIRE(r.code == kExitOk);
  const auto rows = csv_rows(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(significant_digits(rows[i][2]) >= 12);
    CHECK(significant_digits(rows[i][3]) >= 12);
  }
}
