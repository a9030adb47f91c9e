#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "bshift/scenario.hpp"
#include "bshift/suite.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitAnalysisFailure = 1;
constexpr int kExitInputError = 2;

void write_or_print(const bshift::Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw bshift::ScenarioError("cannot write '" + out_path + "'");
  out << j.dump(2) << "\n";
}

int run_command(const std::string& scenario_arg, const std::string& out_path,
                std::optional<std::uint64_t> seed, std::optional<int> degree) {
  bshift::Scenario scenario = [&] {
    const auto names = bshift::bundled_scenario_names();
    if (std::find(names.begin(), names.end(), scenario_arg) != names.end()) {
      return bshift::parse_scenario(
          bshift::Json::parse(bshift::bundled_scenario_text(scenario_arg)));
    }
    return bshift::load_scenario_file(scenario_arg);
  }();

  bshift::RunOptions options;
  options.seed = seed;
  options.degree = degree;
  bshift::Json report = bshift::run_scenario(scenario, options);
  write_or_print(report, out_path);

  const auto& summary = report.at("summary");
  std::cerr << (summary.at("pass").get<bool>() ? "PASS" : "FAIL") << " ("
            << summary.at("passed").get<int>() << "/"
            << summary.at("total").get<int>() << " analyses)\n";
  return bshift::report_passed(report) ? kExitPass : kExitAnalysisFailure;
}

int suite_command(const std::string& name, const std::string& out_path,
                  std::uint64_t seed, double tolerance) {
  bshift::SuiteReport report = bshift::run_suite(name, seed, tolerance);
  bshift::print_suite_report(report, std::cout);
  if (!out_path.empty()) {
    bshift::Json j = bshift::suite_report_to_json(report);
    write_or_print(j, out_path);
  }
  return report.all_pass ? kExitPass : kExitAnalysisFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "bshift: invariant and reducing subspaces of Brownian shifts on "
      "truncated vector-valued Hardy spaces"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string out_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int degree = 0;

  CLI::App* run = app.add_subcommand(
      "run", "Run a scenario file (or a bundled scenario by name)");
  run->add_option("scenario", scenario_arg,
                  "Path to a scenario JSON file, or a bundled name")
      ->required();
  run->add_option("--out", out_path, "Write the report here (default stdout)");
  run->add_option("--seed", seed, "Override the scenario seed")
      ->each([&](const std::string&) { seed_set = true; });
  run->add_option("--degree", degree, "Override ambient max_degree");

  std::string suite_name;
  double tolerance = 0.0;
  CLI::App* suite = app.add_subcommand(
      "suite", "Run a verification suite: acceptance, properties, or all");
  suite->add_option("name", suite_name, "Suite name")->required();
  suite->add_option("--out", out_path, "Write the suite report JSON here");
  suite->add_option("--seed", seed, "Suite seed (default 0)");
  suite->add_option("--tolerance", tolerance,
                    "Force the operation-level residual tolerance");

  CLI::App* list =
      app.add_subcommand("list-scenarios", "List bundled scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(
          scenario_arg, out_path,
          seed_set ? std::optional<std::uint64_t>(seed) : std::nullopt,
          degree > 0 ? std::optional<int>(degree) : std::nullopt);
    }
    if (suite->parsed()) {
      return suite_command(suite_name, out_path, seed, tolerance);
    }
    if (list->parsed()) {
      for (const auto& name : bshift::bundled_scenario_names())
        std::cout << name << "\n";
      return kExitPass;
    }
  } catch (const bshift::ScenarioError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAnalysisFailure;
  }
  return kExitInputError;
}
