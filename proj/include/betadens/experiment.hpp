#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "betadens/config.hpp"

namespace betadens {

/// Command-line overrides; each takes precedence over the config file.
struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
  std::optional<int> trials;
  std::optional<int> threads;  ///< speed only; never changes any output byte
  bool write_files = true;     ///< false: compute and return primary_csv only
};

struct RunResult {
  std::vector<std::filesystem::path> files;  ///< in write order
  std::string primary_csv;                    ///< text of the main CSV table
};

inline constexpr std::uint64_t kDefaultSeed = 20140601;

/// Runs one experiment and writes its CSV table(s) and, where there is a
/// figure, an SVG. Output names are `<name>.csv`, `<name>.svg` and
/// `<name>_<part>.csv`, with `name` defaulting to the snake-case experiment.
/// Throws ConfigError, IoError, or the error of the failing computation.
RunResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace betadens
