#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "paritysim/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

nlohmann::json load_config(const std::string& path) {
  std::ifstream file(path);
  if (!file)
    throw parity::scenario::ConfigError("cannot open config file: " + path);
  try {
    return nlohmann::json::parse(file);
  } catch (const nlohmann::json::parse_error& err) {
    throw parity::scenario::ConfigError(std::string("config is not valid JSON: ") +
                                        err.what());
  }
}

int report_issues(const std::vector<parity::scenario::Issue>& issues) {
  if (issues.empty()) {
    std::cout << "config OK\n";
    return kExitOk;
  }
  std::cerr << "config invalid:\n";
  for (const auto& issue : issues)
    std::cerr << "  " << (issue.path.empty() ? "<root>" : issue.path) << ": "
              << issue.message << "\n";
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"paritysim: cavity-mediated multi-qubit parity measurement scenarios"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "print the scenario catalog as JSON");

  std::string run_config, run_out;
  auto* run = app.add_subcommand("run", "run a scenario and write its CSV dataset");
  run->add_option("--config", run_config, "scenario config (JSON)")->required();
  run->add_option("--out", run_out, "output CSV path (default: <scenario>.csv)");

  std::string validate_config_path;
  auto* validate = app.add_subcommand("validate", "check a config against the schema");
  validate->add_option("--config", validate_config_path, "scenario config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (list->parsed()) {
      std::cout << parity::scenario::catalog_json().dump(2) << "\n";
      return kExitOk;
    }
    if (validate->parsed())
      return report_issues(
          parity::scenario::validate_config(load_config(validate_config_path)));
    if (run->parsed()) {
      const auto config = load_config(run_config);
      const auto issues = parity::scenario::validate_config(config);
      if (!issues.empty()) return report_issues(issues);
      const auto result = parity::scenario::run_scenario(config);
      const std::string out_path =
          run_out.empty() ? result.name + ".csv" : run_out;
      parity::scenario::write_csv(result, out_path);
      std::cout << "wrote " << out_path << " (" << result.rows.size() << " rows)\n";
      return kExitOk;
    }
  } catch (const parity::scenario::ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
