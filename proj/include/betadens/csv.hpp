#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "betadens/risk.hpp"

namespace betadens {

/// Ten significant digits, trailing zeros kept, '.' as decimal point
/// (0.0477 -> "0.04770000000").
std::string format_number(double value);

using CsvCell = std::variant<std::int64_t, double, std::string>;

/// Header plus rows; rendered RFC-4180 style with CRLF-free '\n' line ends.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<CsvCell>> rows;

  std::string to_string() const;
};

/// Throws IoError if the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view text);
void write_csv(const CsvTable& table, const std::filesystem::path& path);

/// Header (n, mean_risk, std_error, m, trials, p) plus one row per report.
CsvTable risk_table(const std::vector<RiskReport>& reports);
void emit_csv(const std::vector<RiskReport>& reports, const std::filesystem::path& path);

/// Parsed CSV: rows of raw fields (quotes removed). Header is rows[0].
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

}  // namespace betadens
