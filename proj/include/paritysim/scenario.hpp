#ifndef PARITYSIM_SCENARIO_HPP
#define PARITYSIM_SCENARIO_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace parity::scenario {

inline constexpr const char* kCodeVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

/// One catalog entry; `default_config` validates against the schema and
/// reproduces the corresponding figure dataset when run.
struct ScenarioInfo {
  std::string name;
  std::string description;
  std::string figure;
  nlohmann::json default_config;
};

/// Stable-ordered scenario catalog.
const std::vector<ScenarioInfo>& catalog();
nlohmann::json catalog_json();

struct Issue {
  std::string path;
  std::string message;
};

/// Schema check; an empty result means the config is runnable. Unknown
/// params are rejected, required fields and ranges are enforced.
std::vector<Issue> validate_config(const nlohmann::json& config);

/// Thrown for schema violations (CLI exit code 2). Physics failures use the
/// module exceptions (exit code 3).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ScenarioResult {
  std::string name;
  std::vector<std::string> metadata;  // emitted as '#'-prefixed header lines
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Deterministic: identical config produces identical CSV bytes.
ScenarioResult run_scenario(const nlohmann::json& config);

/// '#' metadata block, header row, then rows at 17 significant digits.
/// Throws if any value is NaN or infinite.
std::string to_csv(const ScenarioResult& result);
void write_csv(const ScenarioResult& result, const std::string& path);

}  // namespace parity::scenario

#endif
