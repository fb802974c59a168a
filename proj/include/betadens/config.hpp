#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace betadens {

enum class ExperimentKind {
  KernelGaussianFigure,
  HistogramTwoLevelFigure,
  RiskTableSweep,
  RiskSlopePlot,
  LsvHistogramFigure,
  CoefficientReport
};

std::string_view to_string(ExperimentKind kind);
/// Throws ConfigError for an unknown name.
ExperimentKind experiment_kind_from_string(std::string_view name);

/// One experiment described by a flat `key = value` text file.
///
/// Blank lines and lines starting with '#' are ignored. The `experiment` key
/// is mandatory and selects the set of accepted keys; any other key, a
/// duplicate, or a value of the wrong type raises ConfigError naming the key.
/// Values are type-checked at parse time and kept verbatim (trimmed), so
/// serialize() is a canonical form: serialize(parse(serialize(parse(t)))) ==
/// serialize(parse(t)).
class ExperimentConfig {
 public:
  explicit ExperimentConfig(ExperimentKind kind);

  static ExperimentConfig parse(std::string_view text);
  /// Throws IoError if the file cannot be read.
  static ExperimentConfig load(const std::filesystem::path& path);

  std::string serialize() const;

  ExperimentKind kind() const noexcept { return kind_; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  /// Validates the key and value like parse() does.
  void set(const std::string& key, const std::string& value);

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  double get_real(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_text(const std::string& key, const std::string& fallback) const;
  /// nullopt when the key is absent or set to "auto".
  std::optional<std::int64_t> get_int_or_auto(const std::string& key) const;
  std::optional<double> get_real_or_auto(const std::string& key) const;

 private:
  ExperimentKind kind_;
  std::map<std::string, std::string> values_;
};

}  // namespace betadens
