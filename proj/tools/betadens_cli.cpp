#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "betadens/config.hpp"
#include "betadens/errors.hpp"
#include "betadens/experiment.hpp"

namespace {

int report_error(const std::exception& e) {
  std::cerr << "betadens: " << e.what() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Density estimation experiments for dependent stationary sequences"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> trials;
  int threads = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
  app.add_option("--seed", seed, "Override the master seed");
  app.add_option("--out", out, "Output directory");
  app.add_option("--trials", trials, "Override the Monte Carlo trial count")
      ->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads (speed only, never results)")
      ->check(CLI::PositiveNumber);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file (key = value)")->required();

  std::string table_path;
  auto* table = app.add_subcommand("table", "Run a risk sweep config and print its table");
  table->add_option("config", table_path, "RiskTableSweep or RiskSlopePlot config")->required();

  int k_max = 20;
  auto* coeffs = app.add_subcommand("coeffs", "Print dependence coefficients of the AR(1) chain");
  coeffs->add_option("--k-max", k_max, "Largest lag")->check(CLI::Range(1, 40));

  CLI11_PARSE(app, argc, argv);

  betadens::RunOptions options;
  options.seed = seed;
  if (out) options.out_dir = *out;
  options.trials = trials;
  options.threads = threads;

  try {
    if (*run) {
      const auto config = betadens::ExperimentConfig::load(config_path);
      for (const auto& file : betadens::run_experiment(config, options).files) {
        std::cout << file.string() << "\n";
      }
    } else if (*table) {
      const auto config = betadens::ExperimentConfig::load(table_path);
      if (config.kind() != betadens::ExperimentKind::RiskTableSweep &&
          config.kind() != betadens::ExperimentKind::RiskSlopePlot) {
        throw betadens::ConfigError("'table' needs a RiskTableSweep or RiskSlopePlot config");
      }
      std::cout << betadens::run_experiment(config, options).primary_csv;
    } else if (*coeffs) {
      betadens::ExperimentConfig config(betadens::ExperimentKind::CoefficientReport);
      config.set("k_max", std::to_string(k_max));
      options.write_files = out.has_value();
      std::cout << betadens::run_experiment(config, options).primary_csv;
    }
  } catch (const std::exception& e) {
    return report_error(e);
  }
  return 0;
}
