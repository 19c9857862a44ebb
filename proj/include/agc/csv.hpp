// SPDX-License-Identifier: Apache-2.0
#pragma once

// Minimal reader for the flat comma-separated files this project exchanges
// (no quoting, UTF-8, header row first).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace agc::csv {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row
};

std::vector<std::string> split(std::string_view line);
/// Throws FormatError if the header differs from `expected_header`.
Table read(const std::filesystem::path& path, const std::vector<std::string>& expected_header);
double parse_double(const std::string& text, const std::string& context);
long long parse_int(const std::string& text, const std::string& context);
/// Shortest text that parses back to exactly `v`.
std::string format_double(double v);

}  // namespace agc::csv
