#include "betadens/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "betadens/errors.hpp"

namespace betadens {

namespace {

enum class ValueType { Int, UInt, Real, Bool, Text, IntOrAuto, RealOrAuto, Kernel };

struct KeySpec {
  std::string_view key;
  ValueType type;
};

constexpr std::array kCommonKeys{
    KeySpec{"name", ValueType::Text},   KeySpec{"out_dir", ValueType::Text},
    KeySpec{"seed", ValueType::UInt},   KeySpec{"burn_in", ValueType::Int},
    KeySpec{"threads", ValueType::Int},
};

std::vector<KeySpec> keys_for(ExperimentKind kind) {
  std::vector<KeySpec> keys(kCommonKeys.begin(), kCommonKeys.end());
  auto add = [&](std::initializer_list<KeySpec> more) { keys.insert(keys.end(), more); };
  switch (kind) {
    case ExperimentKind::KernelGaussianFigure:
      add({{"n", ValueType::Int},
           {"mu", ValueType::Real},
           {"sigma2", ValueType::Real},
           {"kernel", ValueType::Kernel},
           {"bandwidth", ValueType::RealOrAuto},
           {"grid_points", ValueType::Int}});
      break;
    case ExperimentKind::HistogramTwoLevelFigure:
      add({{"n", ValueType::Int},
           {"bins", ValueType::IntOrAuto},
           {"bins_constant", ValueType::Real}});
      break;
    case ExperimentKind::RiskSlopePlot:
      add({{"loglog", ValueType::Bool}, {"rate_constant", ValueType::Real}});
      [[fallthrough]];
    case ExperimentKind::RiskTableSweep:
      add({{"n_start", ValueType::Int},
           {"n_stop", ValueType::Int},
           {"n_step", ValueType::Int},
           {"trials", ValueType::Int},
           {"p", ValueType::Real},
           {"bins_constant", ValueType::Real},
           {"degree", ValueType::Int}});
      break;
    case ExperimentKind::LsvHistogramFigure:
      add({{"n", ValueType::Int},
           {"gamma", ValueType::Real},
           {"bins", ValueType::IntOrAuto},
           {"skip_bins", ValueType::Int}});
      break;
    case ExperimentKind::CoefficientReport:
      add({{"k_max", ValueType::Int},
           {"x0_samples", ValueType::Int},
           {"quad_panels", ValueType::Int},
           {"pair_grid", ValueType::Int},
           {"pair_max_lag", ValueType::Int}});
      break;
  }
  return keys;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <typename T>
std::optional<T> parse_number(const std::string& text) {
  T value{};
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) return std::nullopt;
  }
  return value;
}

std::optional<bool> parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  return std::nullopt;
}

void check_value(const std::string& key, ValueType type, const std::string& value) {
  bool ok = false;
  switch (type) {
    case ValueType::Int:
      ok = parse_number<std::int64_t>(value).has_value();
      break;
    case ValueType::UInt:
      ok = parse_number<std::uint64_t>(value).has_value();
      break;
    case ValueType::Real:
      ok = parse_number<double>(value).has_value();
      break;
    case ValueType::Bool:
      ok = parse_bool(value).has_value();
      break;
    case ValueType::Text:
      ok = !value.empty();
      break;
    case ValueType::IntOrAuto:
      ok = value == "auto" || parse_number<std::int64_t>(value).has_value();
      break;
    case ValueType::RealOrAuto:
      ok = value == "auto" || parse_number<double>(value).has_value();
      break;
    case ValueType::Kernel:
      ok = value == "epanechnikov" || value == "rectangular" || value == "triangular";
      break;
  }
  if (!ok) throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
}

const KeySpec* find_key(ExperimentKind kind, const std::string& key) {
  static const auto tables = [] {
    std::map<ExperimentKind, std::vector<KeySpec>> t;
    for (auto k : {ExperimentKind::KernelGaussianFigure, ExperimentKind::HistogramTwoLevelFigure,
                   ExperimentKind::RiskTableSweep, ExperimentKind::RiskSlopePlot,
                   ExperimentKind::LsvHistogramFigure, ExperimentKind::CoefficientReport}) {
      t[k] = keys_for(k);
    }
    return t;
  }();
  for (const auto& spec : tables.at(kind)) {
    if (spec.key == key) return &spec;
  }
  return nullptr;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::KernelGaussianFigure:
      return "KernelGaussianFigure";
    case ExperimentKind::HistogramTwoLevelFigure:
      return "HistogramTwoLevelFigure";
    case ExperimentKind::RiskTableSweep:
      return "RiskTableSweep";
    case ExperimentKind::RiskSlopePlot:
      return "RiskSlopePlot";
    case ExperimentKind::LsvHistogramFigure:
      return "LsvHistogramFigure";
    case ExperimentKind::CoefficientReport:
      return "CoefficientReport";
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(std::string_view name) {
  for (auto k : {ExperimentKind::KernelGaussianFigure, ExperimentKind::HistogramTwoLevelFigure,
                 ExperimentKind::RiskTableSweep, ExperimentKind::RiskSlopePlot,
                 ExperimentKind::LsvHistogramFigure, ExperimentKind::CoefficientReport}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

ExperimentConfig::ExperimentConfig(ExperimentKind kind) : kind_(kind) {}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::optional<std::string> experiment;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(stripped).substr(0, eq));
    std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (key == "experiment") {
      if (experiment) throw ConfigError("duplicate key 'experiment'");
      experiment = value;
    } else {
      entries.emplace_back(std::move(key), std::move(value));
    }
  }
  if (!experiment) throw ConfigError("missing key 'experiment'");
  ExperimentConfig config(experiment_kind_from_string(*experiment));
  for (const auto& [key, value] : entries) {
    if (config.has(key)) throw ConfigError("duplicate key '" + key + "'");
    config.set(key, value);
  }
  return config;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse(buffer.str());
}

std::string ExperimentConfig::serialize() const {
  std::string out = "experiment = " + std::string(to_string(kind_)) + "\n";
  for (const auto& [key, value] : values_) out += key + " = " + value + "\n";
  return out;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const KeySpec* spec = find_key(kind_, key);
  if (spec == nullptr) {
    throw ConfigError("unknown key '" + key + "' for experiment " + std::string(to_string(kind_)));
  }
  const std::string trimmed = trim(value);
  check_value(key, spec->type, trimmed);
  values_[key] = trimmed;
}

std::int64_t ExperimentConfig::get_int(const std::string& key, std::int64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : *parse_number<std::int64_t>(it->second);
}

std::uint64_t ExperimentConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : *parse_number<std::uint64_t>(it->second);
}

double ExperimentConfig::get_real(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : *parse_number<double>(it->second);
}

bool ExperimentConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : *parse_bool(it->second);
}

std::string ExperimentConfig::get_text(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::optional<std::int64_t> ExperimentConfig::get_int_or_auto(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second == "auto") return std::nullopt;
  return parse_number<std::int64_t>(it->second);
}

std::optional<double> ExperimentConfig::get_real_or_auto(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second == "auto") return std::nullopt;
  return parse_number<double>(it->second);
}

}  // namespace betadens
